//! Neural resolution model.
//!
//! Every token is encoded as its (frozen) word vector concatenated with the
//! final state of a character LSTM; a single-layer BiLSTM contextualizes the
//! sequence; the anchor is the average of its contextualized tokens; and a
//! shared MLP scores `[h; a; h .* a]` for every candidate head h: each
//! context token plus six trainable implicit-class embeddings. Scores are
//! softmax-normalized and trained with cross-entropy.
//!
//! All math runs in f64 on the [`tape`] autodiff; gradients are validated
//! against central finite differences in the acceptance suite.

pub mod checkpoint;
pub mod external;
pub mod tape;
pub mod train;

pub use external::ExternalVectors;
pub use tape::GradientSet;
pub use train::{train_resolver, TrainConfig, TrainReport};

use std::collections::HashMap;

use crate::corpus::{AnchorSpan, EmbeddingTable, Example, Resolution, Token, IMPLICIT_CLASSES};
use crate::rng::Rng;
use crate::{NfhError, Result};
use tape::{NodeId, Tape};

/// 96-symbol character table: printable ASCII 0x20..=0x7E plus one shared
/// out-of-vocabulary id.
pub const CHAR_VOCAB: usize = 96;
const CHAR_OOV: usize = 95;

fn char_id(c: char) -> usize {
    let code = c as u32;
    if (0x20..=0x7e).contains(&code) {
        (code - 0x20) as usize
    } else {
        CHAR_OOV
    }
}

/// Model dimensions and dropout rate.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ResolverConfig {
    pub char_dim: usize,
    pub char_hidden: usize,
    /// BiLSTM hidden size per direction; candidates are twice this wide.
    pub ctx_hidden: usize,
    pub mlp_hidden: usize,
    pub dropout: f64,
}

impl Default for ResolverConfig {
    fn default() -> Self {
        ResolverConfig {
            char_dim: 30,
            char_hidden: 10,
            ctx_hidden: 50,
            mlp_hidden: 150,
            dropout: 0.2,
        }
    }
}

impl ResolverConfig {
    /// Width of contextualized tokens, implicit embeddings and the anchor.
    pub fn candidate_dim(&self) -> usize {
        2 * self.ctx_hidden
    }
}

/// One named trainable tensor.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub name: String,
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
}

impl Tensor {
    fn new(name: &str, shape: Vec<usize>, data: Vec<f64>) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        Tensor { name: name.to_string(), shape, data }
    }
}

// Trainable tensor indices; the checkpoint stores them by name.
pub(crate) const T_CHAR_EMB: usize = 0;
pub(crate) const T_CHAR_W: usize = 1;
pub(crate) const T_CHAR_U: usize = 2;
pub(crate) const T_CHAR_B: usize = 3;
pub(crate) const T_FWD_W: usize = 4;
pub(crate) const T_FWD_U: usize = 5;
pub(crate) const T_FWD_B: usize = 6;
pub(crate) const T_BWD_W: usize = 7;
pub(crate) const T_BWD_U: usize = 8;
pub(crate) const T_BWD_B: usize = 9;
pub(crate) const T_IMPLICIT: usize = 10;
pub(crate) const T_MLP_W1: usize = 11;
pub(crate) const T_MLP_B1: usize = 12;
pub(crate) const T_MLP_W2: usize = 13;
pub(crate) const T_MLP_B2: usize = 14;
pub(crate) const TENSOR_COUNT: usize = 15;

/// All state of the neural scorer: the frozen word table plus every
/// trainable tensor. The implicit-class embeddings share the BiLSTM output
/// width; word vectors never receive gradients.
#[derive(Debug, Clone)]
pub struct ResolverParams {
    pub config: ResolverConfig,
    pub word_dim: usize,
    vocab: Vec<String>,
    word_index: HashMap<String, usize>,
    /// Row-major `vocab.len() x word_dim`, frozen.
    word_vectors: Vec<f64>,
    unk_vector: Vec<f64>,
    pub tensors: Vec<Tensor>,
}

impl ResolverParams {
    /// Random-initialize from a word table: embeddings and MLP weights
    /// uniform(-0.1, 0.1), recurrent matrices scaled-uniform
    /// (+-1/sqrt(fan-in)), biases zero; all from one seeded stream in
    /// tensor order.
    pub fn init(config: ResolverConfig, words: &EmbeddingTable, seed: u64) -> Self {
        let mut rng = Rng::new(seed);
        let word_dim = words.dimension();
        let token_dim = word_dim + config.char_hidden;
        let cand = config.candidate_dim();

        let emb = |rng: &mut Rng, n: usize| -> Vec<f64> {
            (0..n).map(|_| rng.uniform(-0.1, 0.1)).collect()
        };
        let rec = |rng: &mut Rng, rows: usize, cols: usize| -> Vec<f64> {
            let s = 1.0 / (cols as f64).sqrt();
            (0..rows * cols).map(|_| rng.uniform(-s, s)).collect()
        };

        let ch = config.char_hidden;
        let cd = config.char_dim;
        let xh = config.ctx_hidden;
        let mh = config.mlp_hidden;

        let tensors = vec![
            Tensor::new("char_embeddings", vec![CHAR_VOCAB, cd], emb(&mut rng, CHAR_VOCAB * cd)),
            Tensor::new("char_lstm.w", vec![4 * ch, cd], rec(&mut rng, 4 * ch, cd)),
            Tensor::new("char_lstm.u", vec![4 * ch, ch], rec(&mut rng, 4 * ch, ch)),
            Tensor::new("char_lstm.b", vec![4 * ch], vec![0.0; 4 * ch]),
            Tensor::new("ctx_lstm_fwd.w", vec![4 * xh, token_dim], rec(&mut rng, 4 * xh, token_dim)),
            Tensor::new("ctx_lstm_fwd.u", vec![4 * xh, xh], rec(&mut rng, 4 * xh, xh)),
            Tensor::new("ctx_lstm_fwd.b", vec![4 * xh], vec![0.0; 4 * xh]),
            Tensor::new("ctx_lstm_bwd.w", vec![4 * xh, token_dim], rec(&mut rng, 4 * xh, token_dim)),
            Tensor::new("ctx_lstm_bwd.u", vec![4 * xh, xh], rec(&mut rng, 4 * xh, xh)),
            Tensor::new("ctx_lstm_bwd.b", vec![4 * xh], vec![0.0; 4 * xh]),
            Tensor::new("implicit_embeddings", vec![6, cand], emb(&mut rng, 6 * cand)),
            Tensor::new("mlp.w1", vec![mh, 3 * cand], emb(&mut rng, mh * 3 * cand)),
            Tensor::new("mlp.b1", vec![mh], vec![0.0; mh]),
            Tensor::new("mlp.w2", vec![1, mh], emb(&mut rng, mh)),
            Tensor::new("mlp.b2", vec![1], vec![0.0; 1]),
        ];

        let vocab: Vec<String> = words.words().to_vec();
        let word_index = vocab
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut word_vectors = Vec::with_capacity(vocab.len() * word_dim);
        for w in &vocab {
            word_vectors.extend_from_slice(words.lookup(w));
        }

        ResolverParams {
            config,
            word_dim,
            vocab,
            word_index,
            word_vectors,
            unk_vector: words.unk_vector().to_vec(),
            tensors,
        }
    }

    /// Word vector for a token: surface first, lowercased fallback, then
    /// the unknown vector.
    fn word_vector(&self, token: &Token) -> &[f64] {
        let row = self
            .word_index
            .get(&token.surface)
            .or_else(|| self.word_index.get(&token.lower));
        match row {
            Some(&r) => &self.word_vectors[r * self.word_dim..(r + 1) * self.word_dim],
            None => &self.unk_vector,
        }
    }

    pub fn tensor_shapes(&self) -> Vec<usize> {
        self.tensors.iter().map(|t| t.data.len()).collect()
    }

    /// Width of the BiLSTM input x_i. Precomputed token vectors fed through
    /// [`ResolverParams::encode_precomputed`] must have this width.
    pub fn token_input_dim(&self) -> usize {
        self.word_dim + self.config.char_hidden
    }

    /// Encode tokens into input vectors x_i and contextualized vectors t_i.
    /// Dropout masks are drawn from `seed` only in train mode.
    pub fn encode_tokens(
        &self,
        tokens: &[Token],
        train_mode: bool,
        seed: u64,
    ) -> Result<EncodedContext> {
        if tokens.is_empty() {
            return Err(NfhError::Data("cannot encode an empty token sequence".into()));
        }
        let mut g = GraphBuilder::new(self, train_mode, seed);
        let (xs, ts) = g.encode(tokens)?;
        Ok(EncodedContext {
            x: xs.iter().map(|&id| g.tape.value(id).to_vec()).collect(),
            t: ts.iter().map(|&id| g.tape.value(id).to_vec()).collect(),
        })
    }

    /// Encode from precomputed token vectors instead of the word-character
    /// input layer; the BiLSTM and everything above it are unchanged.
    /// `rows[i]` must have width [`ResolverParams::token_input_dim`].
    pub fn encode_precomputed(
        &self,
        rows: &[Vec<f64>],
        train_mode: bool,
        seed: u64,
    ) -> Result<EncodedContext> {
        if rows.is_empty() {
            return Err(NfhError::Data("cannot encode an empty vector sequence".into()));
        }
        let mut g = GraphBuilder::new(self, train_mode, seed);
        let (xs, ts) = g.encode_precomputed(rows)?;
        Ok(EncodedContext {
            x: xs.iter().map(|&id| g.tape.value(id).to_vec()).collect(),
            t: ts.iter().map(|&id| g.tape.value(id).to_vec()).collect(),
        })
    }

    /// [`ResolverParams::resolve`] over precomputed token vectors.
    pub fn resolve_precomputed(
        &self,
        rows: &[Vec<f64>],
        anchor: AnchorSpan,
    ) -> Result<Resolution> {
        let mut g = GraphBuilder::new(self, false, 0);
        let (_, ts) = g.encode_precomputed(rows)?;
        let anchor_vec = g.anchor_average(&ts, anchor)?;
        let (candidates, logits) = g.candidate_logits(&ts, anchor_vec, anchor);
        let scores = g.tape.value(logits);
        let mut best = 0usize;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        Ok(match candidates[best] {
            Candidate::Token(i) => Resolution::reference(i),
            Candidate::Class(k) => Resolution::Implicit(IMPLICIT_CLASSES[k]),
        })
    }

    /// Score every candidate: the n context tokens followed by the six
    /// implicit classes, in [`IMPLICIT_CLASSES`] order.
    pub fn score_candidates(
        &self,
        encoded: &EncodedContext,
        anchor_vec: &[f64],
    ) -> Result<CandidateScores> {
        let cand = self.config.candidate_dim();
        if anchor_vec.len() != cand {
            return Err(NfhError::Data(format!(
                "anchor vector has width {} but candidates have width {cand}",
                anchor_vec.len()
            )));
        }
        let mut g = GraphBuilder::new(self, false, 0);
        let anchor = g.tape.leaf(anchor_vec.to_vec());
        let mut logits = Vec::with_capacity(encoded.n() + 6);
        for t in &encoded.t {
            let tn = g.tape.leaf(t.clone());
            logits.push(g.score_pair(tn, anchor));
        }
        for class in 0..6 {
            let c = g.implicit_embedding(class);
            logits.push(g.score_pair(c, anchor));
        }
        let stacked = g.tape.stack(logits);
        let scores = g.tape.value(stacked).to_vec();
        let probabilities = tape::softmax(&scores);
        Ok(CandidateScores { scores, probabilities })
    }

    /// Cross-entropy loss and gradients for one gold-labeled example.
    /// Gradients cover every trainable tensor; the word table is frozen and
    /// has no entry.
    pub fn loss_and_gradients(&self, example: &Example, seed: u64) -> Result<(f64, GradientSet)> {
        let gold = example
            .gold
            .as_ref()
            .ok_or_else(|| NfhError::Data(format!("example `{}` has no gold label", example.id)))?;

        let mut g = GraphBuilder::new(self, true, seed);
        let (_, ts) = g.encode(&example.tokens)?;
        let anchor_vec = g.anchor_average(&ts, example.anchor)?;
        let (candidates, logits) = g.candidate_logits(&ts, anchor_vec, example.anchor);

        let target_candidate = target_candidate(example, gold)?;
        let target_slot = candidates
            .iter()
            .position(|c| *c == target_candidate)
            .ok_or_else(|| {
                NfhError::Data(format!(
                    "gold head of `{}` is not a valid candidate",
                    example.id
                ))
            })?;

        let loss_node = g.tape.cross_entropy(logits, target_slot);
        let loss = g.tape.value(loss_node)[0];
        let mut grads = GradientSet::zeros_like(&self.tensor_shapes());
        g.tape.backward(loss_node, &mut grads);
        Ok((loss, grads))
    }

    /// Highest-scoring candidate for an anchor; ties break toward the
    /// lowest candidate index. Anchor-span tokens are not candidates.
    pub fn resolve(&self, example: &Example, anchor: AnchorSpan) -> Result<Resolution> {
        let mut g = GraphBuilder::new(self, false, 0);
        let (_, ts) = g.encode(&example.tokens)?;
        let anchor_vec = g.anchor_average(&ts, anchor)?;
        let (candidates, logits) = g.candidate_logits(&ts, anchor_vec, anchor);
        let scores = g.tape.value(logits);

        let mut best = 0usize;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        Ok(match candidates[best] {
            Candidate::Token(i) => Resolution::reference(i),
            Candidate::Class(k) => Resolution::Implicit(IMPLICIT_CLASSES[k]),
        })
    }

    /// Number of scoring candidates for an anchor in an n-token context.
    pub fn candidate_count(n: usize, anchor: AnchorSpan) -> usize {
        n - anchor.len() + 6
    }
}

/// Training target as a candidate: the closest gold head to the anchor
/// (ties leftward) for references, the class slot for implicits.
fn target_candidate(example: &Example, gold: &Resolution) -> Result<Candidate> {
    match gold {
        Resolution::Implicit(c) => Ok(Candidate::Class(c.index())),
        Resolution::Reference { heads } => {
            let n = example.tokens.len();
            let mut best: Option<usize> = None;
            for &h in heads {
                if h >= n {
                    return Err(NfhError::Data(format!(
                        "gold head {h} outside the context of `{}`",
                        example.id
                    )));
                }
                let better = match best {
                    None => true,
                    Some(b) => {
                        let (dh, db) = (
                            example.anchor.distance_to(h),
                            example.anchor.distance_to(b),
                        );
                        dh < db || (dh == db && h < b)
                    }
                };
                if better {
                    best = Some(h);
                }
            }
            Ok(Candidate::Token(best.expect("validated non-empty heads")))
        }
    }
}

/// Per-token input and contextualized vectors for one context.
#[derive(Debug, Clone)]
pub struct EncodedContext {
    /// Input vectors x_i (word vector concatenated with char-LSTM state).
    pub x: Vec<Vec<f64>>,
    /// Contextualized vectors t_i (BiLSTM forward and backward states).
    pub t: Vec<Vec<f64>>,
}

impl EncodedContext {
    pub fn n(&self) -> usize {
        self.t.len()
    }
}

/// Scores over the full candidate list: n tokens then six classes.
#[derive(Debug, Clone)]
pub struct CandidateScores {
    pub scores: Vec<f64>,
    pub probabilities: Vec<f64>,
}

/// Componentwise mean of the contextualized anchor tokens.
pub fn anchor_representation(encoded: &EncodedContext, anchor: AnchorSpan) -> Result<Vec<f64>> {
    if anchor.end >= encoded.n() {
        return Err(NfhError::Data(format!(
            "anchor [{},{}] outside encoded context of {} tokens",
            anchor.start,
            anchor.end,
            encoded.n()
        )));
    }
    let width = encoded.t[0].len();
    let mut out = vec![0.0; width];
    for t in &encoded.t[anchor.start..=anchor.end] {
        for (o, v) in out.iter_mut().zip(t) {
            *o += v;
        }
    }
    let k = anchor.len() as f64;
    for o in &mut out {
        *o /= k;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Candidate {
    Token(usize),
    Class(usize),
}

struct GraphBuilder<'p> {
    p: &'p ResolverParams,
    tape: Tape,
    dropout_rng: Option<Rng>,
}

impl<'p> GraphBuilder<'p> {
    fn new(p: &'p ResolverParams, train_mode: bool, seed: u64) -> Self {
        let dropout_rng = (train_mode && p.config.dropout > 0.0).then(|| Rng::new(seed));
        GraphBuilder { p, tape: Tape::new(TENSOR_COUNT), dropout_rng }
    }

    fn param(&mut self, idx: usize) -> NodeId {
        self.tape.param(idx, &self.p.tensors[idx].data)
    }

    /// Inverted dropout: zero with probability p, else scale by 1/(1-p).
    fn dropout(&mut self, x: NodeId) -> NodeId {
        let Some(rng) = &mut self.dropout_rng else {
            return x;
        };
        let p = self.p.config.dropout;
        let keep = 1.0 / (1.0 - p);
        let mask: Vec<f64> = (0..self.tape.value(x).len())
            .map(|_| if rng.bernoulli(p) { 0.0 } else { keep })
            .collect();
        self.tape.mask_scale(x, mask)
    }

    /// One LSTM step; gate blocks are laid out [input, forget, cell, output].
    #[allow(clippy::too_many_arguments)]
    fn lstm_step(
        &mut self,
        w: NodeId,
        u: NodeId,
        b: NodeId,
        x: NodeId,
        h: NodeId,
        c: NodeId,
        hidden: usize,
        input: usize,
    ) -> (NodeId, NodeId) {
        let wx = self.tape.matvec(w, x, 4 * hidden, input);
        let uh = self.tape.matvec(u, h, 4 * hidden, hidden);
        let s = self.tape.add(wx, uh);
        let gates = self.tape.add(s, b);
        let i_gate = self.tape.slice(gates, 0, hidden);
        let i_gate = self.tape.sigmoid(i_gate);
        let f_gate = self.tape.slice(gates, hidden, hidden);
        let f_gate = self.tape.sigmoid(f_gate);
        let g_gate = self.tape.slice(gates, 2 * hidden, hidden);
        let g_gate = self.tape.tanh(g_gate);
        let o_gate = self.tape.slice(gates, 3 * hidden, hidden);
        let o_gate = self.tape.sigmoid(o_gate);
        let fc = self.tape.hadamard(f_gate, c);
        let ig = self.tape.hadamard(i_gate, g_gate);
        let c_new = self.tape.add(fc, ig);
        let tc = self.tape.tanh(c_new);
        let h_new = self.tape.hadamard(o_gate, tc);
        (h_new, c_new)
    }

    /// Final hidden state of the character LSTM over a token's surface.
    fn char_encoding(&mut self, token: &Token) -> Result<NodeId> {
        if token.surface.is_empty() {
            return Err(NfhError::Data("token with empty surface".into()));
        }
        let cd = self.p.config.char_dim;
        let ch = self.p.config.char_hidden;
        let emb = self.param(T_CHAR_EMB);
        let w = self.param(T_CHAR_W);
        let u = self.param(T_CHAR_U);
        let b = self.param(T_CHAR_B);
        let mut h = self.tape.leaf(vec![0.0; ch]);
        let mut c = self.tape.leaf(vec![0.0; ch]);
        for chr in token.surface.chars() {
            let x = self.tape.row(emb, char_id(chr), cd);
            (h, c) = self.lstm_step(w, u, b, x, h, c, ch, cd);
        }
        Ok(h)
    }

    /// Inputs x_i and contextualized t_i for the whole token sequence.
    fn encode(&mut self, tokens: &[Token]) -> Result<(Vec<NodeId>, Vec<NodeId>)> {
        let mut xs = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let word = self.tape.leaf(self.p.word_vector(tok).to_vec());
            let chars = self.char_encoding(tok)?;
            let x = self.tape.concat(vec![word, chars]);
            xs.push(self.dropout(x));
        }
        Ok(self.contextualize(xs))
    }

    /// Same pipeline with externally precomputed inputs in place of the
    /// word-character layer.
    fn encode_precomputed(&mut self, rows: &[Vec<f64>]) -> Result<(Vec<NodeId>, Vec<NodeId>)> {
        let want = self.p.token_input_dim();
        let mut xs = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != want {
                return Err(NfhError::Data(format!(
                    "precomputed vector {i} has width {} but the encoder expects {want}",
                    row.len()
                )));
            }
            let x = self.tape.leaf(row.clone());
            xs.push(self.dropout(x));
        }
        Ok(self.contextualize(xs))
    }

    /// BiLSTM over prepared inputs; returns (xs, ts).
    fn contextualize(&mut self, xs: Vec<NodeId>) -> (Vec<NodeId>, Vec<NodeId>) {
        let token_dim = self.p.token_input_dim();
        let xh = self.p.config.ctx_hidden;

        let fw = self.param(T_FWD_W);
        let fu = self.param(T_FWD_U);
        let fb = self.param(T_FWD_B);
        let mut h = self.tape.leaf(vec![0.0; xh]);
        let mut c = self.tape.leaf(vec![0.0; xh]);
        let mut fwd = Vec::with_capacity(xs.len());
        for &x in &xs {
            (h, c) = self.lstm_step(fw, fu, fb, x, h, c, xh, token_dim);
            fwd.push(h);
        }

        let bw = self.param(T_BWD_W);
        let bu = self.param(T_BWD_U);
        let bb = self.param(T_BWD_B);
        let mut h = self.tape.leaf(vec![0.0; xh]);
        let mut c = self.tape.leaf(vec![0.0; xh]);
        let mut bwd = vec![0; xs.len()];
        for (i, &x) in xs.iter().enumerate().rev() {
            (h, c) = self.lstm_step(bw, bu, bb, x, h, c, xh, token_dim);
            bwd[i] = h;
        }

        let mut ts = Vec::with_capacity(xs.len());
        for i in 0..xs.len() {
            let t = self.tape.concat(vec![fwd[i], bwd[i]]);
            ts.push(self.dropout(t));
        }
        (xs, ts)
    }

    fn anchor_average(&mut self, ts: &[NodeId], anchor: AnchorSpan) -> Result<NodeId> {
        if anchor.end >= ts.len() {
            return Err(NfhError::Data(format!(
                "anchor [{},{}] outside context of {} tokens",
                anchor.start,
                anchor.end,
                ts.len()
            )));
        }
        Ok(self.tape.average(ts[anchor.start..=anchor.end].to_vec()))
    }

    fn implicit_embedding(&mut self, class: usize) -> NodeId {
        let cand = self.p.config.candidate_dim();
        let imp = self.param(T_IMPLICIT);
        self.tape.row(imp, class, cand)
    }

    /// MLP score for one head-anchor pair: MLP([h; a; h .* a]).
    fn score_pair(&mut self, h: NodeId, a: NodeId) -> NodeId {
        let cand = self.p.config.candidate_dim();
        let mh = self.p.config.mlp_hidden;
        let ha = self.tape.hadamard(h, a);
        let input = self.tape.concat(vec![h, a, ha]);
        let w1 = self.param(T_MLP_W1);
        let b1 = self.param(T_MLP_B1);
        let pre = self.tape.matvec(w1, input, mh, 3 * cand);
        let pre = self.tape.add(pre, b1);
        let hidden = self.tape.tanh(pre);
        let hidden = self.dropout(hidden);
        let w2 = self.param(T_MLP_W2);
        let b2 = self.param(T_MLP_B2);
        let out = self.tape.matvec(w2, hidden, 1, mh);
        self.tape.add(out, b2)
    }

    /// Logits over the candidate set, excluding anchor-span tokens.
    /// Candidate order follows the full indexing (tokens, then classes).
    fn candidate_logits(
        &mut self,
        ts: &[NodeId],
        anchor_vec: NodeId,
        anchor: AnchorSpan,
    ) -> (Vec<Candidate>, NodeId) {
        let mut candidates = Vec::with_capacity(ts.len() + 6);
        let mut logits = Vec::with_capacity(ts.len() + 6);
        for (i, &t) in ts.iter().enumerate() {
            if anchor.contains(i) {
                continue;
            }
            candidates.push(Candidate::Token(i));
            logits.push(self.score_pair(t, anchor_vec));
        }
        for class in 0..6 {
            let c = self.implicit_embedding(class);
            candidates.push(Candidate::Class(class));
            logits.push(self.score_pair(c, anchor_vec));
        }
        (candidates, self.tape.stack(logits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{EmbeddingTable, ExampleBuilder, ImplicitClass};

    pub(crate) fn tiny_table(dim: usize, seed: u64) -> EmbeddingTable {
        let mut rng = Rng::new(seed);
        let words = ["no", "one", "cares", "take", "two", "i", "am", "42", "."];
        EmbeddingTable::new(
            words
                .iter()
                .map(|w| {
                    (
                        w.to_string(),
                        (0..dim).map(|_| rng.uniform(-0.5, 0.5)).collect(),
                    )
                })
                .collect(),
        )
        .unwrap()
    }

    fn small_config() -> ResolverConfig {
        ResolverConfig {
            char_dim: 4,
            char_hidden: 3,
            ctx_hidden: 5,
            mlp_hidden: 7,
            dropout: 0.2,
        }
    }

    fn example() -> Example {
        ExampleBuilder::new("n/1")
            .sentence(
                "No|DT|1|det one|CD|2|nsubj cares|VBZ|-1|root .|.|2|punct",
                None,
            )
            .anchor(1, 1)
            .gold_implicit(ImplicitClass::People)
            .build()
            .unwrap()
    }

    #[test]
    fn encoding_shapes() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        assert_eq!(enc.n(), 4);
        assert!(enc.x.iter().all(|x| x.len() == 8 + 3));
        assert!(enc.t.iter().all(|t| t.len() == 10));
    }

    #[test]
    fn inference_is_deterministic() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let a = params.encode_tokens(&ex.tokens, false, 7).unwrap();
        let b = params.encode_tokens(&ex.tokens, false, 99).unwrap();
        assert_eq!(a.t, b.t);
        assert_eq!(a.x, b.x);
    }

    #[test]
    fn one_character_token_encodes_finite() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = ExampleBuilder::new("n/char")
            .sentence("I|PRP|1|nsubj am|VBP|-1|root 5|CD|1|attr", None)
            .anchor(2, 2)
            .build()
            .unwrap();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        assert!(enc.x.iter().flatten().all(|v| v.is_finite()));
        assert!(enc.t.iter().flatten().all(|v| v.is_finite()));
    }

    #[test]
    fn single_token_anchor_is_identity() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        let a = anchor_representation(&enc, ex.anchor).unwrap();
        assert_eq!(a, enc.t[1]);
    }

    #[test]
    fn two_token_anchor_is_mean() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = ExampleBuilder::new("n/2")
            .sentence("take|VB|-1|root thirty|CD|2|compound six|CD|0|dobj", None)
            .anchor(1, 2)
            .build()
            .unwrap();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        let a = anchor_representation(&enc, ex.anchor).unwrap();
        for j in 0..a.len() {
            let expected = (enc.t[1][j] + enc.t[2][j]) / 2.0;
            assert!((a[j] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn out_of_range_anchor_errors() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        assert!(anchor_representation(&enc, AnchorSpan::new(4, 4)).is_err());
    }

    #[test]
    fn probabilities_normalize_and_count() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        let a = anchor_representation(&enc, ex.anchor).unwrap();
        let scores = params.score_candidates(&enc, &a).unwrap();
        assert_eq!(scores.scores.len(), 4 + 6);
        assert!((scores.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-6);
        assert!(scores.probabilities.iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn shift_invariance_of_softmax() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        let a = anchor_representation(&enc, ex.anchor).unwrap();
        let scores = params.score_candidates(&enc, &a).unwrap();
        let shifted: Vec<f64> = scores.scores.iter().map(|s| s + 5.0).collect();
        let reprob = tape::softmax(&shifted);
        for (p, q) in scores.probabilities.iter().zip(&reprob) {
            assert!((p - q).abs() < 1e-9);
        }
    }

    #[test]
    fn dimension_mismatch_errors() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        assert!(params.score_candidates(&enc, &[0.0; 3]).is_err());
    }

    #[test]
    fn uniform_logits_give_ln_m_loss() {
        // Analytic check of the loss form: -log(1/m) = ln m.
        let logits = vec![0.25; 9];
        let mut t = Tape::new(0);
        let l = t.leaf(logits);
        let ce = t.cross_entropy(l, 4);
        assert!((t.value(ce)[0] - (9f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn anchor_tokens_never_predicted() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let res = params.resolve(&ex, ex.anchor).unwrap();
        if let Resolution::Reference { heads } = &res {
            assert!(!heads.iter().any(|&h| ex.anchor.contains(h)));
        }
    }

    #[test]
    fn implicit_swap_swaps_probabilities() {
        let mut params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        let a = anchor_representation(&enc, ex.anchor).unwrap();
        let before = params.score_candidates(&enc, &a).unwrap();

        // Swap rows 0 and 3 of the implicit embedding matrix.
        let cand = params.config.candidate_dim();
        let data = &mut params.tensors[T_IMPLICIT].data;
        for j in 0..cand {
            data.swap(j, 3 * cand + j);
        }
        let after = params.score_candidates(&enc, &a).unwrap();
        let n = enc.n();
        assert!((before.probabilities[n] - after.probabilities[n + 3]).abs() < 1e-9);
        assert!((before.probabilities[n + 3] - after.probabilities[n]).abs() < 1e-9);
        for i in 0..n {
            assert!((before.probabilities[i] - after.probabilities[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn dropout_gradients_match_finite_differences() {
        // With a fixed seed the masks are a deterministic function of the
        // graph shape, so central differences remain a valid oracle.
        let mut params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let seed = 5u64;
        let (_, analytic) = params.loss_and_gradients(&ex, seed).unwrap();
        let h = 1e-4;
        for ti in [T_MLP_W2, T_IMPLICIT, T_FWD_B] {
            for j in 0..params.tensors[ti].data.len() {
                let orig = params.tensors[ti].data[j];
                params.tensors[ti].data[j] = orig + h;
                let up = params.loss_and_gradients(&ex, seed).unwrap().0;
                params.tensors[ti].data[j] = orig - h;
                let down = params.loss_and_gradients(&ex, seed).unwrap().0;
                params.tensors[ti].data[j] = orig;
                let numeric = (up - down) / (2.0 * h);
                let a = analytic.grads[ti][j];
                let rel = (a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-8);
                assert!(
                    rel < 1e-3,
                    "tensor {ti} entry {j}: analytic {a} vs numeric {numeric}"
                );
            }
        }
    }

    #[test]
    fn frozen_words_have_no_gradient_slot() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let (_, grads) = params.loss_and_gradients(&ex, 5).unwrap();
        assert_eq!(grads.grads.len(), TENSOR_COUNT);
        assert!(params.tensors.iter().all(|t| t.name != "word_embeddings"));
    }

    #[test]
    fn precomputed_inputs_reproduce_the_pipeline() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let ex = example();
        let enc = params.encode_tokens(&ex.tokens, false, 0).unwrap();
        // Feeding the word-char inputs back through the plug point yields
        // the same contextualized vectors and the same resolution.
        let again = params.encode_precomputed(&enc.x, false, 0).unwrap();
        assert_eq!(enc.t, again.t);
        let a = params.resolve(&ex, ex.anchor).unwrap();
        let b = params.resolve_precomputed(&enc.x, ex.anchor).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn precomputed_width_checked() {
        let params = ResolverParams::init(small_config(), &tiny_table(8, 1), 13);
        let rows = vec![vec![0.0; 4]];
        assert!(params.encode_precomputed(&rows, false, 0).is_err());
    }

    #[test]
    fn closest_gold_head_breaks_left() {
        let ex = ExampleBuilder::new("n/3")
            .sentence(
                "men|NNS|1|nsubj are|VBP|-1|root like|IN|1|prep busses|NNS|2|pobj ;|,|1|punct miss|VB|1|conj one|CD|5|dobj",
                None,
            )
            .anchor(6, 6)
            .gold_reference(&[0, 3])
            .build()
            .unwrap();
        let target = target_candidate(&ex, ex.gold.as_ref().unwrap()).unwrap();
        assert_eq!(target, Candidate::Token(3));
    }
}
