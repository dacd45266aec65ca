//! Finite instance spaces.
//!
//! Every [`Kind`] has a closed-form size and a mixed-radix decoding from an
//! index to an instance, so exhaustive runs can stream the whole space and
//! sampled runs can draw uniformly by index without materializing anything.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{KernelError, Result};
use crate::function::Fun;
use crate::value::{cartesian, Atom, VSet, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_carrier: usize,
    pub atom_pool: Vec<Atom>,
    pub mode: Mode,
    /// Hard cap on predicate evaluations in exhaustive mode.
    pub cap: u64,
    /// Worker threads for law checking. Never changes results.
    pub jobs: usize,
}

pub const DEFAULT_CAP: u64 = 1_000_000;

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_carrier: 2,
            atom_pool: ["a", "b", "c", "d", "e", "f"].iter().map(|s| Atom::sym(s)).collect(),
            mode: Mode::Exhaustive,
            cap: DEFAULT_CAP,
            jobs: 1,
        }
    }
}

impl EnumConfig {
    pub fn exhaustive(max_carrier: usize) -> Self {
        EnumConfig {
            max_carrier,
            ..Default::default()
        }
    }

    pub fn sampled(max_carrier: usize, count: u64, seed: u64) -> Self {
        EnumConfig {
            max_carrier,
            mode: Mode::Sampled { count, seed },
            ..Default::default()
        }
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.max_carrier > self.atom_pool.len() {
            return Err(format!(
                "max carrier {} exceeds the atom pool size {}",
                self.max_carrier,
                self.atom_pool.len()
            ));
        }
        let distinct: std::collections::BTreeSet<_> = self.atom_pool.iter().collect();
        if distinct.len() != self.atom_pool.len() {
            return Err("atom pool contains duplicates".into());
        }
        if self.jobs == 0 {
            return Err("jobs must be at least 1".into());
        }
        if let Mode::Sampled { count: 0, .. } = self.mode {
            return Err("sample count must be at least 1".into());
        }
        Ok(())
    }

    /// The first `n` atoms of the pool.
    pub fn carrier(&self, n: usize) -> VSet {
        self.atom_pool.iter().take(n).cloned().map(Value::Atom).collect()
    }
}

/// One enumerable space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Every subset.
    Subsets(VSet),
    /// Every relation from the first set to the second.
    Relations(VSet, VSet),
    /// Every total function.
    Functions(VSet, VSet),
    /// Every function with domain and range inside the given sets.
    PartialFunctions(VSet, VSet),
    /// Every family on `index` whose members are subsets of `carrier`.
    SetFamilies {
        index: VSet,
        carrier: VSet,
        nonempty: bool,
    },
    /// Every family on `index` whose members are partial functions.
    FunFamilies { index: VSet, xs: VSet, ys: VSet },
    /// Every family of relations, member `i` ranging over relations from
    /// the first set to the second.
    RelFamilies(Vec<(Value, VSet, VSet)>),
    /// Every family picking member `i` from its own list of values.
    Choices(Vec<(Value, Vec<Value>)>),
    Explicit(Vec<Value>),
}

fn pow(base: u128, exp: usize) -> u128 {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .unwrap_or(u128::MAX)
}

fn mul(a: u128, b: u128) -> u128 {
    a.saturating_mul(b)
}

fn subset_at(elems: &[Value], mut idx: u128) -> VSet {
    let mut out = VSet::new();
    for e in elems {
        if idx & 1 == 1 {
            out.insert(e.clone());
        }
        idx >>= 1;
    }
    out
}

fn pairs_value(s: VSet) -> Value {
    Value::Set(s)
}

impl Kind {
    /// Exact number of instances (saturating at `u128::MAX`).
    pub fn count(&self) -> u128 {
        match self {
            Kind::Subsets(s) => pow(2, s.len()),
            Kind::Relations(x, y) => pow(2, x.len() * y.len()),
            Kind::Functions(x, y) => pow(y.len() as u128, x.len()),
            Kind::PartialFunctions(x, y) => pow(y.len() as u128 + 1, x.len()),
            Kind::SetFamilies { index, carrier, nonempty } => {
                let per = pow(2, carrier.len()) - u128::from(*nonempty);
                pow(per, index.len())
            }
            Kind::FunFamilies { index, xs, ys } => {
                pow(pow(ys.len() as u128 + 1, xs.len()), index.len())
            }
            Kind::RelFamilies(members) => members
                .iter()
                .fold(1, |acc, (_, x, y)| mul(acc, pow(2, x.len() * y.len()))),
            Kind::Choices(members) => members
                .iter()
                .fold(1, |acc, (_, vs)| mul(acc, vs.len() as u128)),
            Kind::Explicit(v) => v.len() as u128,
        }
    }

    /// The instance at position `idx` of the mixed-radix decoding.
    /// `idx` must be below [`Kind::count`].
    pub fn nth(&self, idx: u128) -> Value {
        match self {
            Kind::Subsets(s) => {
                let elems: Vec<Value> = s.iter().cloned().collect();
                Value::Set(subset_at(&elems, idx))
            }
            Kind::Relations(x, y) => {
                let elems: Vec<Value> = cartesian(x, y).into_iter().collect();
                pairs_value(subset_at(&elems, idx))
            }
            Kind::Functions(x, y) => {
                let ys: Vec<&Value> = y.iter().collect();
                let radix = ys.len() as u128;
                let mut idx = idx;
                Value::Fun(
                    x.iter()
                        .map(|xv| {
                            let d = (idx % radix) as usize;
                            idx /= radix;
                            (xv.clone(), ys[d].clone())
                        })
                        .collect(),
                )
            }
            Kind::PartialFunctions(x, y) => Value::Fun(partial_at(x, y, idx)),
            Kind::SetFamilies { index, carrier, nonempty } => {
                let elems: Vec<Value> = carrier.iter().cloned().collect();
                let offset = u128::from(*nonempty);
                let radix = pow(2, elems.len()) - offset;
                let mut idx = idx;
                Value::Fun(
                    index
                        .iter()
                        .map(|i| {
                            let d = idx % radix;
                            idx /= radix;
                            (i.clone(), Value::Set(subset_at(&elems, d + offset)))
                        })
                        .collect(),
                )
            }
            Kind::FunFamilies { index, xs, ys } => {
                let radix = pow(ys.len() as u128 + 1, xs.len());
                let mut idx = idx;
                Value::Fun(
                    index
                        .iter()
                        .map(|i| {
                            let d = idx % radix;
                            idx /= radix;
                            (i.clone(), Value::Fun(partial_at(xs, ys, d)))
                        })
                        .collect(),
                )
            }
            Kind::RelFamilies(members) => {
                let mut idx = idx;
                Value::Fun(
                    members
                        .iter()
                        .map(|(i, x, y)| {
                            let elems: Vec<Value> = cartesian(x, y).into_iter().collect();
                            let radix = pow(2, elems.len());
                            let d = idx % radix;
                            idx /= radix;
                            (i.clone(), pairs_value(subset_at(&elems, d)))
                        })
                        .collect(),
                )
            }
            Kind::Choices(members) => {
                let mut idx = idx;
                Value::Fun(
                    members
                        .iter()
                        .map(|(i, vs)| {
                            let radix = vs.len() as u128;
                            let d = idx % radix;
                            idx /= radix;
                            (i.clone(), vs[d as usize].clone())
                        })
                        .collect(),
                )
            }
            Kind::Explicit(v) => v[idx as usize].clone(),
        }
    }

    /// Every instance, exactly once, smaller sets first where size applies.
    pub fn all(&self) -> Vec<Value> {
        let n = self.count();
        let mut out: Vec<Value> = (0..n).map(|i| self.nth(i)).collect();
        if matches!(self, Kind::Subsets(_) | Kind::Relations(..)) {
            out.sort_by(|a, b| {
                let (la, lb) = (a.as_set().map_or(0, |s| s.len()), b.as_set().map_or(0, |s| s.len()));
                la.cmp(&lb).then_with(|| a.cmp(b))
            });
        }
        out
    }

    /// One uniform draw.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Option<Value> {
        let n = self.count();
        (n > 0).then(|| self.nth(rng.gen_range(0..n)))
    }
}

fn partial_at(x: &VSet, y: &VSet, mut idx: u128) -> Fun {
    let ys: Vec<&Value> = y.iter().collect();
    let radix = ys.len() as u128 + 1;
    let mut out = Vec::new();
    for xv in x {
        let d = (idx % radix) as usize;
        idx /= radix;
        if d > 0 {
            out.push((xv.clone(), ys[d - 1].clone()));
        }
    }
    out.into_iter().collect()
}

/// A deterministic generator for sample number `i` under `seed`.
pub fn sample_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Streams a space under `cfg`: every instance in exhaustive mode, or
/// `count` seeded uniform draws in sampled mode.
pub fn enumerate(kind: Kind, cfg: &EnumConfig) -> Result<Box<dyn Iterator<Item = Value> + Send>> {
    match cfg.mode {
        Mode::Exhaustive => {
            let n = kind.count();
            if n > cfg.cap as u128 {
                return Err(KernelError::BudgetExceeded(n));
            }
            Ok(Box::new(kind.all().into_iter()))
        }
        Mode::Sampled { count, seed } => Ok(Box::new(
            (0..count).filter_map(move |i| kind.sample(&mut sample_rng(seed, i))),
        )),
    }
}

/// All subsets of `s`, smaller first.
pub fn subsets(s: &VSet) -> Vec<VSet> {
    Kind::Subsets(s.clone())
        .all()
        .into_iter()
        .map(|v| match v {
            Value::Set(s) => s,
            _ => unreachable!("subsets are sets"),
        })
        .collect()
}

/// Prefixes of the carrier with sizes in `lo..=hi`, as set values.
pub fn prefixes(carrier: &VSet, lo: usize, hi: usize) -> Vec<Value> {
    (lo..=hi.min(carrier.len()))
        .map(|k| Value::Set(carrier.iter().take(k).cloned().collect()))
        .collect()
}
