//! Interval-valued measures on finite sample spaces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Atom count up to which additivity is checked on every disjoint pair.
pub const EXHAUSTIVE_ATOMS: usize = 10;

/// Finite interval measure on the power set of the atoms.
///
/// The measure of a set is the interval sum of its atom weights unless the
/// set has an explicitly recorded value. Recorded values make it possible to
/// describe (and detect) measures that are not additive.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteIntervalMeasure {
    pub weights: BTreeMap<String, Interval>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Event {
    pub atoms: BTreeSet<String>,
    pub value: Interval,
}

impl FiniteIntervalMeasure {
    pub fn new<I, S>(weights: I) -> Self
    where
        I: IntoIterator<Item = (S, Interval)>,
        S: Into<String>,
    {
        FiniteIntervalMeasure {
            weights: weights.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            events: Vec::new(),
        }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::InvalidParameter(format!("measure JSON: {e}")))
    }

    /// Records `value` as the measure of `atoms`, replacing any earlier record.
    pub fn record_event<I, S>(&mut self, atoms: I, value: Interval) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: BTreeSet<String> = atoms.into_iter().map(Into::into).collect();
        self.check_atoms(&atoms)?;
        self.events.retain(|e| e.atoms != atoms);
        self.events.push(Event { atoms, value });
        Ok(())
    }

    fn check_atoms(&self, atoms: &BTreeSet<String>) -> Result<()> {
        match atoms.iter().find(|a| !self.weights.contains_key(*a)) {
            Some(a) => Err(Error::InvalidParameter(format!("unknown atom `{a}`"))),
            None => Ok(()),
        }
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &str> {
        self.weights.keys().map(String::as_str)
    }

    /// Interval sum of atom weights, ignoring recorded events.
    pub fn atom_sum<'a, I>(&self, atoms: I) -> Result<Interval>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut total = Interval::ZERO;
        for a in atoms {
            let w = self
                .weights
                .get(a)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown atom `{a}`")))?;
            total = total.add(*w)?;
        }
        Ok(total)
    }

    /// `μ(S)`.
    pub fn measure<'a, I>(&self, atoms: I) -> Result<Interval>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let set: BTreeSet<String> = atoms.into_iter().map(str::to_string).collect();
        self.check_atoms(&set)?;
        if let Some(e) = self.events.iter().rev().find(|e| e.atoms == set) {
            return Ok(e.value);
        }
        self.atom_sum(set.iter().map(String::as_str))
    }

    pub fn total(&self) -> Result<Interval> {
        self.measure(self.outcomes().collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub atoms: usize,
    pub nonnegative: bool,
    pub empty_set_zero: bool,
    pub additive: bool,
    /// Number of (S, T) pairs compared.
    pub pairs_checked: usize,
    pub additivity_failures: Vec<String>,
    pub total: Interval,
    pub probability: bool,
    pub probability_deviation: f64,
}

impl MeasureReport {
    /// All axioms hold (normalization is reported separately).
    pub fn passes(&self) -> bool {
        self.nonnegative && self.empty_set_zero && self.additive
    }
}

const MAX_LISTED_FAILURES: usize = 10;

fn set_label(bits: u64, names: &[&str]) -> String {
    let members: Vec<&str> = (0..names.len())
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| names[i])
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Checks nonnegativity, `μ(∅) = [0,0]`, additivity on disjoint pairs and
/// whether `μ(Ω) = [1,1]` within `1e-12`.
pub fn validate_measure(m: &FiniteIntervalMeasure) -> Result<MeasureReport> {
    let names: Vec<&str> = m.outcomes().collect();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let n = names.len();
    if n > 63 {
        return Err(Error::InvalidParameter("at most 63 atoms are supported".into()));
    }
    for e in &m.events {
        m.check_atoms(&e.atoms)?;
    }
    let mask = |atoms: &BTreeSet<String>| atoms.iter().fold(0u64, |b, a| b | 1 << index[a.as_str()]);
    let recorded: HashMap<u64, Interval> = m.events.iter().map(|e| (mask(&e.atoms), e.value)).collect();

    let weights: Vec<Interval> = names.iter().map(|a| m.weights[*a]).collect();
    let scale = 1.0 + weights.iter().map(|w| w.hi().abs()).sum::<f64>();
    let tol = 1e-12 * scale;
    let mu = |bits: u64| -> Result<Interval> {
        if let Some(v) = recorded.get(&bits) {
            return Ok(*v);
        }
        let mut total = Interval::ZERO;
        for (i, w) in weights.iter().enumerate() {
            if bits >> i & 1 == 1 {
                total = total.add(*w)?;
            }
        }
        Ok(total)
    };

    let nonnegative = weights
        .iter()
        .chain(recorded.values())
        .all(|w| Interval::ZERO.leq(w));
    let empty_set_zero = mu(0)? == Interval::ZERO;

    let mut failures = Vec::new();
    let mut failure_count = 0usize;
    let mut pairs = 0usize;
    let mut check = |s: u64, t: u64| -> Result<()> {
        pairs += 1;
        let joint = mu(s | t)?;
        let split = mu(s)?.add(mu(t)?)?;
        if joint.metric(&split)? > tol {
            failure_count += 1;
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(format!(
                    "mu({}) = {joint} but mu({}) + mu({}) = {split}",
                    set_label(s | t, &names),
                    set_label(s, &names),
                    set_label(t, &names)
                ));
            }
        }
        Ok(())
    };
    if n <= EXHAUSTIVE_ATOMS {
        // every ordered disjoint pair with S <= T as masks
        let full = (1u64 << n) - 1;
        for s in 0..=full {
            let rest = full & !s;
            let mut t = rest;
            loop {
                if s <= t {
                    check(s, t)?;
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & rest;
            }
        }
    } else {
        // each recorded event against its decomposition into single atoms
        let mut events: Vec<u64> = recorded.keys().copied().collect();
        events.sort_unstable();
        for &e in &events {
            let mut acc = 0u64;
            for i in 0..n {
                if e >> i & 1 == 1 {
                    check(acc, 1 << i)?;
                    acc |= 1 << i;
                }
            }
        }
        for (i, &s) in events.iter().enumerate() {
            for &t in &events[i + 1..] {
                if s & t == 0 {
                    check(s, t)?;
                }
            }
        }
    }

    // a recorded singleton must agree with the atom's own weight
    let mut singletons: Vec<(&u64, &Interval)> =
        recorded.iter().filter(|(b, _)| b.count_ones() == 1).collect();
    singletons.sort_unstable_by_key(|(b, _)| **b);
    for (&bits, value) in singletons {
        let w = weights[bits.trailing_zeros() as usize];
        if value.metric(&w)? > tol {
            failure_count += 1;
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(format!(
                    "recorded mu({}) = {value} but the atom weight is {w}",
                    set_label(bits, &names)
                ));
            }
        }
    }

    let total = mu(if n == 0 { 0 } else { (1u64 << n) - 1 })?;
    let probability_deviation = total.metric(&Interval::ONE)?;
    if failure_count > failures.len() {
        failures.push(format!("... {} more", failure_count - failures.len()));
    }
    Ok(MeasureReport {
        atoms: n,
        nonnegative,
        empty_set_zero,
        additive: failure_count == 0,
        pairs_checked: pairs,
        additivity_failures: failures,
        total,
        probability: probability_deviation <= 1e-12,
        probability_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn two_atom_examples() {
        let m = FiniteIntervalMeasure::new([("a", iv(0.3, 0.4)), ("b", iv(0.6, 0.7))]);
        let r = validate_measure(&m).unwrap();
        assert!(r.passes());
        assert!(!r.probability);
        assert!(r.total.metric(&iv(0.9, 1.1)).unwrap() < 1e-15);
        assert_eq!(r.pairs_checked, 5);

        let m = FiniteIntervalMeasure::new([("a", iv(0.5, 0.5)), ("b", iv(0.5, 0.5))]);
        let r = validate_measure(&m).unwrap();
        assert!(r.passes() && r.probability);
    }

    #[test]
    fn empty_measure() {
        let r = validate_measure(&FiniteIntervalMeasure::default()).unwrap();
        assert!(r.empty_set_zero && r.additive && r.nonnegative);
        assert_eq!(r.total, Interval::ZERO);
        assert!(!r.probability);
    }

    #[test]
    fn inconsistent_event_detected() {
        let mut m = FiniteIntervalMeasure::new([("a", iv(0.2, 0.3)), ("b", iv(0.1, 0.2)), ("c", iv(0.5, 0.5))]);
        m.record_event(["a", "b"], iv(0.3, 0.5)).unwrap();
        assert!(validate_measure(&m).unwrap().passes());
        m.weights.insert("a".into(), iv(0.25, 0.3));
        let r = validate_measure(&m).unwrap();
        assert!(!r.additive);
        assert!(!r.additivity_failures.is_empty());

        let mut m = FiniteIntervalMeasure::new([("a", iv(0.2, 0.3))]);
        m.record_event(Vec::<String>::new(), iv(0.0, 0.1)).unwrap();
        assert!(!validate_measure(&m).unwrap().empty_set_zero);
        assert!(m.record_event(["z"], Interval::ONE).is_err());
    }

    #[test]
    fn negative_weight_flagged() {
        let m = FiniteIntervalMeasure::new([("a", iv(-0.1, 0.3))]);
        assert!(!validate_measure(&m).unwrap().nonnegative);
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"weights":{"a":[0.25,0.5],"b":[0.5,0.75]},"events":[{"atoms":["a","b"],"value":[0.75,1.25]}]}"#;
        let m = FiniteIntervalMeasure::from_json(src).unwrap();
        assert_eq!(m.measure(["b", "a"]).unwrap(), iv(0.75, 1.25));
        assert_eq!(serde_json::to_string(&m).unwrap(), src);
        assert!(FiniteIntervalMeasure::from_json(r#"{"weights":{"a":[2,1]}}"#).is_err());
        assert!(FiniteIntervalMeasure::from_json(r#"{"weight":{}}"#).is_err());
    }

    #[test]
    fn many_atoms_use_event_checks() {
        let mut m = FiniteIntervalMeasure::new((0..12).map(|i| (format!("w{i:02}"), iv(0.05, 0.1))));
        m.record_event(["w00", "w01", "w02"], iv(0.15, 0.3)).unwrap();
        let r = validate_measure(&m).unwrap();
        assert!(r.passes());
        assert_eq!(r.pairs_checked, 3);
        m.record_event(["w03", "w04"], iv(0.1, 0.25)).unwrap();
        assert!(!validate_measure(&m).unwrap().additive);
    }
}
