//! Minimal reverse-mode autodiff over flat f64 vectors.
//!
//! The resolver's forward pass builds one tape per example; values are
//! computed eagerly at node creation and gradients flow backwards through
//! the op list. The op set is exactly what the model needs: matrix-vector
//! products, rows of embedding matrices, slices (LSTM gate blocks),
//! elementwise nonlinearities, concatenation, averaging, constant masks
//! (dropout) and a fused softmax cross-entropy.

pub type NodeId = usize;

#[derive(Debug, Clone)]
enum Op {
    /// Constant input; no gradient.
    Leaf,
    /// Trainable tensor, identified by its index in the parameter list.
    Param(usize),
    Row { src: NodeId, row: usize, width: usize },
    MatVec { m: NodeId, x: NodeId, rows: usize, cols: usize },
    Add { a: NodeId, b: NodeId },
    Hadamard { a: NodeId, b: NodeId },
    Concat { parts: Vec<NodeId> },
    Slice { src: NodeId, start: usize, len: usize },
    Tanh { x: NodeId },
    Sigmoid { x: NodeId },
    Average { parts: Vec<NodeId> },
    MaskScale { x: NodeId, mask: Vec<f64> },
    /// Stack scalar nodes into one vector.
    Stack { parts: Vec<NodeId> },
    /// Negative log softmax probability of `target`.
    CrossEntropy { logits: NodeId, target: usize },
}

struct Node {
    op: Op,
    value: Vec<f64>,
}

/// Gradients for the trainable tensors, aligned with the parameter list.
#[derive(Debug, Clone)]
pub struct GradientSet {
    pub grads: Vec<Vec<f64>>,
}

impl GradientSet {
    pub fn zeros_like(shapes: &[usize]) -> Self {
        GradientSet { grads: shapes.iter().map(|&n| vec![0.0; n]).collect() }
    }
}

pub struct Tape {
    nodes: Vec<Node>,
    /// Param index -> node id, so each tensor appears once per tape.
    param_nodes: Vec<Option<NodeId>>,
}

impl Tape {
    pub fn new(param_count: usize) -> Self {
        Tape { nodes: Vec::new(), param_nodes: vec![None; param_count] }
    }

    fn push(&mut self, op: Op, value: Vec<f64>) -> NodeId {
        self.nodes.push(Node { op, value });
        self.nodes.len() - 1
    }

    pub fn value(&self, id: NodeId) -> &[f64] {
        &self.nodes[id].value
    }

    pub fn leaf(&mut self, value: Vec<f64>) -> NodeId {
        self.push(Op::Leaf, value)
    }

    /// Register (or reuse) the node for trainable tensor `index`.
    pub fn param(&mut self, index: usize, value: &[f64]) -> NodeId {
        if let Some(id) = self.param_nodes[index] {
            return id;
        }
        let id = self.push(Op::Param(index), value.to_vec());
        self.param_nodes[index] = Some(id);
        id
    }

    pub fn row(&mut self, src: NodeId, row: usize, width: usize) -> NodeId {
        let value = self.nodes[src].value[row * width..(row + 1) * width].to_vec();
        self.push(Op::Row { src, row, width }, value)
    }

    pub fn matvec(&mut self, m: NodeId, x: NodeId, rows: usize, cols: usize) -> NodeId {
        debug_assert_eq!(self.nodes[m].value.len(), rows * cols);
        debug_assert_eq!(self.nodes[x].value.len(), cols);
        let mv = &self.nodes[m].value;
        let xv = &self.nodes[x].value;
        let mut out = vec![0.0; rows];
        for r in 0..rows {
            let row = &mv[r * cols..(r + 1) * cols];
            out[r] = row.iter().zip(xv).map(|(a, b)| a * b).sum();
        }
        self.push(Op::MatVec { m, x, rows, cols }, out)
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> NodeId {
        debug_assert_eq!(self.nodes[a].value.len(), self.nodes[b].value.len());
        let value = self.nodes[a]
            .value
            .iter()
            .zip(&self.nodes[b].value)
            .map(|(x, y)| x + y)
            .collect();
        self.push(Op::Add { a, b }, value)
    }

    pub fn hadamard(&mut self, a: NodeId, b: NodeId) -> NodeId {
        debug_assert_eq!(self.nodes[a].value.len(), self.nodes[b].value.len());
        let value = self.nodes[a]
            .value
            .iter()
            .zip(&self.nodes[b].value)
            .map(|(x, y)| x * y)
            .collect();
        self.push(Op::Hadamard { a, b }, value)
    }

    pub fn concat(&mut self, parts: Vec<NodeId>) -> NodeId {
        let mut value = Vec::new();
        for &p in &parts {
            value.extend_from_slice(&self.nodes[p].value);
        }
        self.push(Op::Concat { parts }, value)
    }

    pub fn slice(&mut self, src: NodeId, start: usize, len: usize) -> NodeId {
        let value = self.nodes[src].value[start..start + len].to_vec();
        self.push(Op::Slice { src, start, len }, value)
    }

    pub fn tanh(&mut self, x: NodeId) -> NodeId {
        let value = self.nodes[x].value.iter().map(|v| v.tanh()).collect();
        self.push(Op::Tanh { x }, value)
    }

    pub fn sigmoid(&mut self, x: NodeId) -> NodeId {
        let value = self.nodes[x]
            .value
            .iter()
            .map(|v| 1.0 / (1.0 + (-v).exp()))
            .collect();
        self.push(Op::Sigmoid { x }, value)
    }

    pub fn average(&mut self, parts: Vec<NodeId>) -> NodeId {
        let width = self.nodes[parts[0]].value.len();
        let mut value = vec![0.0; width];
        for &p in &parts {
            for (o, v) in value.iter_mut().zip(&self.nodes[p].value) {
                *o += v;
            }
        }
        let k = parts.len() as f64;
        for o in &mut value {
            *o /= k;
        }
        self.push(Op::Average { parts }, value)
    }

    /// Elementwise multiply by a constant mask (inverted dropout).
    pub fn mask_scale(&mut self, x: NodeId, mask: Vec<f64>) -> NodeId {
        debug_assert_eq!(self.nodes[x].value.len(), mask.len());
        let value = self.nodes[x]
            .value
            .iter()
            .zip(&mask)
            .map(|(v, m)| v * m)
            .collect();
        self.push(Op::MaskScale { x, mask }, value)
    }

    pub fn stack(&mut self, parts: Vec<NodeId>) -> NodeId {
        let mut value = Vec::with_capacity(parts.len());
        for &p in &parts {
            debug_assert_eq!(self.nodes[p].value.len(), 1);
            value.push(self.nodes[p].value[0]);
        }
        self.push(Op::Stack { parts }, value)
    }

    /// Loss node: negative log softmax probability of the target slot.
    pub fn cross_entropy(&mut self, logits: NodeId, target: usize) -> NodeId {
        let value = vec![-log_softmax_at(&self.nodes[logits].value, target)];
        self.push(Op::CrossEntropy { logits, target }, value)
    }

    /// Backpropagate from a scalar node; gradients of `Param` nodes are
    /// accumulated into `out` (indexed by param index).
    pub fn backward(&self, loss: NodeId, out: &mut GradientSet) {
        debug_assert_eq!(self.nodes[loss].value.len(), 1);
        let mut grads: Vec<Vec<f64>> = self
            .nodes
            .iter()
            .map(|n| vec![0.0; n.value.len()])
            .collect();
        grads[loss][0] = 1.0;

        for id in (0..=loss).rev() {
            if grads[id].iter().all(|&g| g == 0.0) {
                continue;
            }
            let g = std::mem::take(&mut grads[id]);
            match &self.nodes[id].op {
                Op::Leaf => {}
                Op::Param(p) => {
                    for (o, gi) in out.grads[*p].iter_mut().zip(&g) {
                        *o += gi;
                    }
                }
                Op::Row { src, row, width } => {
                    let base = row * width;
                    for (j, gi) in g.iter().enumerate() {
                        grads[*src][base + j] += gi;
                    }
                }
                Op::MatVec { m, x, rows, cols } => {
                    let mv = &self.nodes[*m].value;
                    let xv = &self.nodes[*x].value;
                    for r in 0..*rows {
                        let gr = g[r];
                        if gr == 0.0 {
                            continue;
                        }
                        let row = r * cols;
                        for c in 0..*cols {
                            grads[*m][row + c] += gr * xv[c];
                            grads[*x][c] += gr * mv[row + c];
                        }
                    }
                }
                Op::Add { a, b } => {
                    for (ga, gi) in grads[*a].iter_mut().zip(&g) {
                        *ga += gi;
                    }
                    for (gb, gi) in grads[*b].iter_mut().zip(&g) {
                        *gb += gi;
                    }
                }
                Op::Hadamard { a, b } => {
                    let av = self.nodes[*a].value.clone();
                    let bv = self.nodes[*b].value.clone();
                    for (i, gi) in g.iter().enumerate() {
                        grads[*a][i] += gi * bv[i];
                        grads[*b][i] += gi * av[i];
                    }
                }
                Op::Concat { parts } => {
                    let mut offset = 0;
                    for &p in parts {
                        let w = self.nodes[p].value.len();
                        for j in 0..w {
                            grads[p][j] += g[offset + j];
                        }
                        offset += w;
                    }
                }
                Op::Slice { src, start, len } => {
                    for j in 0..*len {
                        grads[*src][start + j] += g[j];
                    }
                }
                Op::Tanh { x } => {
                    let yv = &self.nodes[id].value;
                    for (j, gi) in g.iter().enumerate() {
                        grads[*x][j] += gi * (1.0 - yv[j] * yv[j]);
                    }
                }
                Op::Sigmoid { x } => {
                    let yv = &self.nodes[id].value;
                    for (j, gi) in g.iter().enumerate() {
                        grads[*x][j] += gi * yv[j] * (1.0 - yv[j]);
                    }
                }
                Op::Average { parts } => {
                    let k = parts.len() as f64;
                    for &p in parts {
                        for (j, gi) in g.iter().enumerate() {
                            grads[p][j] += gi / k;
                        }
                    }
                }
                Op::MaskScale { x, mask } => {
                    for (j, gi) in g.iter().enumerate() {
                        grads[*x][j] += gi * mask[j];
                    }
                }
                Op::Stack { parts } => {
                    for (j, &p) in parts.iter().enumerate() {
                        grads[p][0] += g[j];
                    }
                }
                Op::CrossEntropy { logits, target } => {
                    let probs = softmax(&self.nodes[*logits].value);
                    let go = g[0];
                    for (j, p) in probs.iter().enumerate() {
                        let indicator = if j == *target { 1.0 } else { 0.0 };
                        grads[*logits][j] += go * (p - indicator);
                    }
                }
            }
        }
    }
}

/// Numerically stable softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

fn log_softmax_at(logits: &[f64], target: usize) -> f64 {
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = logits.iter().map(|&v| (v - max).exp()).sum::<f64>().ln() + max;
    logits[target] - lse
}
