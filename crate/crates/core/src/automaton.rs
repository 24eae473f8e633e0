//! Variable-structure learning automaton with linear reinforcement.
//!
//! An automaton keeps a probability vector over its actions. A favorable
//! response to action `i` applies
//!
//! ```text
//! p_i <- p_i + a (1 - p_i)        p_j <- (1 - a) p_j          (j != i)
//! ```
//!
//! and an unfavorable one applies
//!
//! ```text
//! p_i <- (1 - b) p_i              p_j <- b / (r - 1) + (1 - b) p_j
//! ```
//!
//! Environment responses are binary; which of [`Automaton::reward`] and
//! [`Automaton::penalize`] gets called is the response.

use rand::Rng;
use thiserror::Error;

use crate::graph::EdgeId;

/// Sum drift beyond which the vector is renormalized.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// L_{R-P}: a = b.
    RewardPenalty,
    /// L_{R-εP}: 0 < b < a.
    RewardEpsilonPenalty,
    /// L_{R-I}: b = 0, penalties leave the vector untouched.
    RewardInaction,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error("reward rate {0} must lie in (0, 1]")]
    RewardRate(f64),
    #[error("penalty rate {0} must lie in [0, 1)")]
    PenaltyRate(f64),
    #[error("{kind:?} requires {rule}, got a = {a}, b = {b}")]
    Inconsistent {
        kind: SchemeKind,
        rule: &'static str,
        a: f64,
        b: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReinforcementScheme {
    kind: SchemeKind,
    a: f64,
    b: f64,
}

impl ReinforcementScheme {
    pub fn new(kind: SchemeKind, a: f64, b: f64) -> Result<Self, SchemeError> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(SchemeError::RewardRate(a));
        }
        if !(0.0..1.0).contains(&b) {
            return Err(SchemeError::PenaltyRate(b));
        }
        let rule = match kind {
            SchemeKind::RewardPenalty if a != b => Some("a = b"),
            SchemeKind::RewardEpsilonPenalty if !(b > 0.0 && b < a) => Some("0 < b < a"),
            SchemeKind::RewardInaction if b != 0.0 => Some("b = 0"),
            _ => None,
        };
        match rule {
            Some(rule) => Err(SchemeError::Inconsistent { kind, rule, a, b }),
            None => Ok(Self { kind, a, b }),
        }
    }

    pub fn reward_inaction(a: f64) -> Result<Self, SchemeError> {
        Self::new(SchemeKind::RewardInaction, a, 0.0)
    }

    pub fn reward_penalty(rate: f64) -> Result<Self, SchemeError> {
        Self::new(SchemeKind::RewardPenalty, rate, rate)
    }

    pub fn reward_epsilon_penalty(a: f64, b: f64) -> Result<Self, SchemeError> {
        Self::new(SchemeKind::RewardEpsilonPenalty, a, b)
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn reward_rate(&self) -> f64 {
        self.a
    }

    pub fn penalty_rate(&self) -> f64 {
        self.b
    }
}

impl Default for ReinforcementScheme {
    /// L_{R-I} with learning rate 0.3.
    fn default() -> Self {
        Self {
            kind: SchemeKind::RewardInaction,
            a: 0.3,
            b: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("an automaton needs at least one action")]
    NoActions,
    #[error("action {index} out of range for {actions} actions")]
    ActionOutOfRange { index: usize, actions: usize },
    #[error("action {index} is not in the active subset")]
    ActionNotActive { index: usize },
}

/// Returned by masked sampling when the admissible actions carry no mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no admissible action")]
pub struct NoAdmissibleAction;

#[derive(Debug, Clone, PartialEq)]
pub struct Automaton {
    p: Vec<f64>,
    scheme: ReinforcementScheme,
    labels: Vec<EdgeId>,
}

impl Automaton {
    pub fn new_uniform(
        labels: Vec<EdgeId>,
        scheme: ReinforcementScheme,
    ) -> Result<Self, AutomatonError> {
        if labels.is_empty() {
            return Err(AutomatonError::NoActions);
        }
        let r = labels.len();
        Ok(Self {
            p: vec![1.0 / r as f64; r],
            scheme,
            labels,
        })
    }

    /// Number of actions `r`.
    pub fn actions(&self) -> usize {
        self.p.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn labels(&self) -> &[EdgeId] {
        &self.labels
    }

    pub fn label(&self, action: usize) -> EdgeId {
        self.labels[action]
    }

    pub fn scheme(&self) -> ReinforcementScheme {
        self.scheme
    }

    fn check_index(&self, index: usize) -> Result<(), AutomatonError> {
        if index < self.p.len() {
            Ok(())
        } else {
            Err(AutomatonError::ActionOutOfRange {
                index,
                actions: self.p.len(),
            })
        }
    }

    pub fn reward(&mut self, index: usize) -> Result<(), AutomatonError> {
        self.check_index(index)?;
        let a = self.scheme.a;
        for (j, pj) in self.p.iter_mut().enumerate() {
            if j == index {
                *pj += a * (1.0 - *pj);
            } else {
                *pj *= 1.0 - a;
            }
        }
        self.renormalize();
        Ok(())
    }

    pub fn penalize(&mut self, index: usize) -> Result<(), AutomatonError> {
        self.check_index(index)?;
        let b = self.scheme.b;
        let r = self.p.len();
        if b == 0.0 {
            return Ok(());
        }
        if r == 1 {
            self.p[0] = 1.0;
            return Ok(());
        }
        let share = b / (r - 1) as f64;
        for (j, pj) in self.p.iter_mut().enumerate() {
            if j == index {
                *pj *= 1.0 - b;
            } else {
                *pj = share + (1.0 - b) * *pj;
            }
        }
        self.renormalize();
        Ok(())
    }

    /// Reward restricted to the action subset `active` (which must contain
    /// `index`): the subset is rescaled to sum to one, updated as an
    /// automaton with `active.len()` actions, and scaled back. Actions
    /// outside the subset keep their probabilities. With every action
    /// active this is exactly [`Automaton::reward`].
    pub fn reward_within(&mut self, index: usize, active: &[usize]) -> Result<(), AutomatonError> {
        self.update_within(index, active, true)
    }

    /// Penalty counterpart of [`Automaton::reward_within`].
    pub fn penalize_within(
        &mut self,
        index: usize,
        active: &[usize],
    ) -> Result<(), AutomatonError> {
        self.update_within(index, active, false)
    }

    fn update_within(
        &mut self,
        index: usize,
        active: &[usize],
        favorable: bool,
    ) -> Result<(), AutomatonError> {
        self.check_index(index)?;
        for &j in active {
            self.check_index(j)?;
        }
        if !active.contains(&index) {
            return Err(AutomatonError::ActionNotActive { index });
        }
        if active.len() == self.p.len() {
            return if favorable {
                self.reward(index)
            } else {
                self.penalize(index)
            };
        }
        let mass: f64 = active.iter().map(|&j| self.p[j]).sum();
        if mass <= 0.0 {
            return Ok(());
        }
        let mut sub = Automaton {
            p: active.iter().map(|&j| self.p[j] / mass).collect(),
            scheme: self.scheme,
            labels: active.to_vec(),
        };
        let pos = active
            .iter()
            .position(|&j| j == index)
            .expect("checked above");
        if favorable {
            sub.reward(pos)?;
        } else {
            sub.penalize(pos)?;
        }
        for (&j, &q) in active.iter().zip(&sub.p) {
            self.p[j] = q * mass;
        }
        self.renormalize();
        Ok(())
    }

    fn renormalize(&mut self) {
        for pj in &mut self.p {
            *pj = pj.clamp(0.0, 1.0);
        }
        let sum: f64 = self.p.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            for pj in &mut self.p {
                *pj /= sum;
            }
        }
    }

    /// Samples an action from `p`, or from `p` restricted to `mask` and
    /// renormalized. The stored vector is never changed by masking.
    pub fn select_action<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        mask: Option<&[usize]>,
    ) -> Result<usize, NoAdmissibleAction> {
        match mask {
            None => self.select_action_where(rng, |_| true),
            Some(allowed) => self.select_action_where(rng, |i| allowed.contains(&i)),
        }
    }

    /// Like [`Automaton::select_action`] with the mask given as a predicate
    /// over action indices.
    pub fn select_action_where<R, F>(
        &self,
        rng: &mut R,
        allowed: F,
    ) -> Result<usize, NoAdmissibleAction>
    where
        R: Rng + ?Sized,
        F: Fn(usize) -> bool,
    {
        let total: f64 = (0..self.p.len())
            .filter(|&i| allowed(i))
            .map(|i| self.p[i])
            .sum();
        if total <= 0.0 {
            return Err(NoAdmissibleAction);
        }
        let mut target = rng.gen::<f64>() * total;
        let mut last = None;
        for (i, &pi) in self.p.iter().enumerate() {
            if pi <= 0.0 || !allowed(i) {
                continue;
            }
            if target < pi {
                return Ok(i);
            }
            target -= pi;
            last = Some(i);
        }
        // Rounding can leave `target` a hair above the final cumulative mass.
        last.ok_or(NoAdmissibleAction)
    }

    /// Shannon entropy of `p` in bits divided by `log2(r)`, so uniform
    /// vectors score 1 and degenerate ones 0. Single-action automata score 0.
    pub fn normalized_entropy(&self) -> f64 {
        normalized_entropy(&self.p)
    }
}

/// Normalized entropy of a probability vector; see
/// [`Automaton::normalized_entropy`].
pub fn normalized_entropy(p: &[f64]) -> f64 {
    let r = p.len();
    if r <= 1 {
        return 0.0;
    }
    let first = p[0];
    if p.iter().all(|&x| x == first) {
        return 1.0;
    }
    let bits: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum();
    (bits / (r as f64).log2()).clamp(0.0, 1.0)
}
