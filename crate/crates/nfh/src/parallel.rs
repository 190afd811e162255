//! Deterministic per-example fan-out.
//!
//! Batch commands (identify, resolve, eval) may process examples on several
//! threads; results are merged back in input order so the output is
//! identical to a sequential run. `NFH_THREADS` caps the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Worker count: available parallelism, capped by `NFH_THREADS` when set.
pub fn worker_count() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("NFH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => available.min(cap),
        _ => available,
    }
}

/// Apply `f` to every item, in parallel, preserving input order.
pub fn ordered_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = worker_count().min(items.len().max(1));
    if workers <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }

    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<U>> = Vec::with_capacity(items.len());
    slots.resize_with(items.len(), || None);
    let slots_ptr = SlotWriter(slots.as_mut_ptr());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            let next = &next;
            let f = &f;
            let writer = &slots_ptr;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let out = f(&items[i]);
                // Each index is claimed by exactly one worker.
                unsafe { writer.write(i, out) };
            });
        }
    });

    slots.into_iter().map(|s| s.expect("slot filled")).collect()
}

struct SlotWriter<U>(*mut Option<U>);

unsafe impl<U: Send> Sync for SlotWriter<U> {}

impl<U> SlotWriter<U> {
    unsafe fn write(&self, i: usize, value: U) {
        unsafe { *self.0.add(i) = Some(value) };
    }
}
