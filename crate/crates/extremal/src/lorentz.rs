//! Lorentz sequence space d(w,1) and its predual on finite truncations:
//! rearrangement norms, closed-form extreme points, the duality pairing,
//! and weight-proportionality rigidity.

use std::sync::Mutex;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polytope::SignedPermutation;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sparse::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Generator {
    /// w_n = 1/n
    Harmonic,
    /// w_n = 1/n^q, accepted only where the power is exactly rational
    Power(Rational),
    /// finite strictly decreasing list
    Explicit(Vec<Rational>),
}

/// A strictly decreasing sequence of positive rational weights with cached
/// prefix sums W(n).
///
/// The harmonic and power generators satisfy the w in c0 \ l1 requirement
/// of the underlying space; explicit finite lists cannot witness that
/// asymptotic condition, so they carry a warning flag for reports.
#[derive(Debug)]
pub struct WeightSeq {
    gen: Generator,
    weights: Mutex<Vec<Rational>>,
    prefix: Mutex<Vec<Rational>>,
}

impl Clone for WeightSeq {
    fn clone(&self) -> Self {
        WeightSeq {
            gen: self.gen.clone(),
            weights: Mutex::new(self.weights.lock().unwrap().clone()),
            prefix: Mutex::new(self.prefix.lock().unwrap().clone()),
        }
    }
}

impl PartialEq for WeightSeq {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl WeightSeq {
    fn from_generator(gen: Generator) -> Self {
        WeightSeq {
            gen,
            weights: Mutex::new(Vec::new()),
            prefix: Mutex::new(Vec::new()),
        }
    }

    pub fn harmonic() -> Self {
        WeightSeq::from_generator(Generator::Harmonic)
    }

    /// w_n = 1/n^q for rational 0 < q <= 1. Weights are only materialized
    /// where n^q is exactly rational; anything else is an error, never a
    /// float.
    pub fn power(q: Rational) -> Result<Self> {
        if q <= Rational::zero() || q > Rational::one() {
            return Err(Error::invalid(format!(
                "power generator needs 0 < q <= 1, got {}",
                format_rational(&q)
            )));
        }
        Ok(WeightSeq::from_generator(Generator::Power(q)))
    }

    pub fn explicit(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("explicit weight list must be nonempty"));
        }
        for v in &values {
            if *v <= Rational::zero() {
                return Err(Error::invalid("weights must be positive"));
            }
        }
        for w in values.windows(2) {
            if w[1] >= w[0] {
                return Err(Error::invalid("weights must be strictly decreasing"));
            }
        }
        Ok(WeightSeq::from_generator(Generator::Explicit(values)))
    }

    /// Explicit lists cannot certify the asymptotic c0 \ l1 membership.
    pub fn asymptotic_warning(&self) -> bool {
        matches!(self.gen, Generator::Explicit(_))
    }

    fn compute(&self, n: usize) -> Result<Rational> {
        match &self.gen {
            Generator::Harmonic => Ok(Rational::new(1.into(), BigInt::from(n))),
            Generator::Power(q) => {
                let a = q
                    .numer()
                    .to_u32()
                    .ok_or_else(|| Error::invalid("power exponent numerator too large"))?;
                let b = q
                    .denom()
                    .to_u32()
                    .ok_or_else(|| Error::invalid("power exponent denominator too large"))?;
                let base = BigInt::from(n).pow(a);
                let root = base.nth_root(b);
                if root.clone().pow(b) != base {
                    return Err(Error::invalid(format!(
                        "{n}^{} is irrational; the power generator only materializes exact weights",
                        format_rational(q)
                    )));
                }
                Ok(Rational::new(1.into(), root))
            }
            Generator::Explicit(values) => values.get(n - 1).cloned().ok_or_else(|| {
                Error::invalid(format!(
                    "explicit weight list has {} entries, index {n} requested",
                    values.len()
                ))
            }),
        }
    }

    fn ensure(&self, depth: usize) -> Result<()> {
        let mut weights = self.weights.lock().unwrap();
        let mut prefix = self.prefix.lock().unwrap();
        while weights.len() < depth {
            let n = weights.len() + 1;
            let w = self.compute(n)?;
            let sum = prefix.last().cloned().unwrap_or_else(Rational::zero) + &w;
            weights.push(w);
            prefix.push(sum);
        }
        Ok(())
    }

    /// w_n, 1-based.
    pub fn weight(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::invalid("weights are 1-based"));
        }
        self.ensure(n)?;
        Ok(self.weights.lock().unwrap()[n - 1].clone())
    }

    /// W(n) = w_1 + ... + w_n.
    pub fn prefix_sum(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::invalid("prefix sums are 1-based"));
        }
        self.ensure(n)?;
        Ok(self.prefix.lock().unwrap()[n - 1].clone())
    }
}

impl Serialize for WeightSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match &self.gen {
            Generator::Harmonic => WeightWire {
                generator: "harmonic".into(),
                q: None,
                values: None,
            },
            Generator::Power(q) => WeightWire {
                generator: "power".into(),
                q: Some(format_rational(q)),
                values: None,
            },
            Generator::Explicit(values) => WeightWire {
                generator: "explicit".into(),
                q: None,
                values: Some(values.iter().map(format_rational).collect()),
            },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WeightWire::deserialize(deserializer)?;
        let to_de = |e: Error| D::Error::custom(e.to_string());
        match wire.generator.as_str() {
            "harmonic" => Ok(WeightSeq::harmonic()),
            "power" => {
                let q = wire
                    .q
                    .ok_or_else(|| D::Error::custom("power generator needs a field q"))?;
                WeightSeq::power(parse_rational(&q).map_err(to_de)?).map_err(to_de)
            }
            "explicit" => {
                let values = wire
                    .values
                    .ok_or_else(|| D::Error::custom("explicit generator needs values"))?;
                let parsed: Result<Vec<Rational>> =
                    values.iter().map(|s| parse_rational(s)).collect();
                WeightSeq::explicit(parsed.map_err(to_de)?).map_err(to_de)
            }
            other => Err(D::Error::custom(format!("unknown weight generator {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WeightWire {
    generator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<String>>,
}

/// The multiset of |nonzero coordinates| sorted descending.
pub fn decreasing_rearrangement(x: &SparseVec) -> Vec<Rational> {
    let mut vals: Vec<Rational> = x.iter().map(|(_, v)| v.abs()).collect();
    vals.sort_by(|a, b| b.cmp(a));
    vals
}

/// The d(w,1) norm: the sup over permutations is attained by pairing the
/// decreasing rearrangement with the decreasing weights.
pub fn lorentz_norm(x: &SparseVec, w: &WeightSeq) -> Result<Rational> {
    let tilde = decreasing_rearrangement(x);
    let mut sum = Rational::zero();
    for (i, v) in tilde.iter().enumerate() {
        sum += v * w.weight(i + 1)?;
    }
    Ok(sum)
}

/// True iff x is an extreme point of the d(w,1) unit ball: some n_0 with
/// exactly n_0 nonzero coordinates, all of absolute value 1/W(n_0), with
/// w_1 > w_{n_0} when n_0 > 1 (automatic for strictly decreasing weights,
/// still checked).
pub fn lorentz_extreme_check(x: &SparseVec, w: &WeightSeq) -> Result<bool> {
    let tilde = decreasing_rearrangement(x);
    if tilde.is_empty() {
        return Ok(false);
    }
    let n0 = tilde.len();
    let height = Rational::one() / w.prefix_sum(n0)?;
    if tilde.iter().any(|v| *v != height) {
        return Ok(false);
    }
    if n0 > 1 && w.weight(1)? <= w.weight(n0)? {
        return Ok(false);
    }
    Ok(true)
}

/// All extreme points of the truncated unit ball: (1/W(k)) eps chi_A over
/// A inside [1, n] with |A| = k and all sign patterns. Count is
/// sum over k of 2^k C(n,k) = 3^n - 1.
pub fn enumerate_lorentz_extremes(n: usize, w: &WeightSeq) -> Result<Vec<SparseVec>> {
    if n == 0 {
        return Err(Error::invalid("n must be a positive integer"));
    }
    let mut out = Vec::new();
    for k in 1..=n {
        let height = Rational::one() / w.prefix_sum(k)?;
        for subset in (1..=n).combinations(k) {
            for mask in 0..1u32 << k {
                let pairs = subset.iter().enumerate().map(|(pos, &idx)| {
                    let v = if mask >> pos & 1 == 0 {
                        height.clone()
                    } else {
                        -height.clone()
                    };
                    (idx, v)
                });
                out.push(SparseVec::from_pairs(pairs)?);
            }
        }
    }
    Ok(out)
}

/// The predual norm sup_n S(n)/W(n) with S the partial sums of the
/// decreasing rearrangement. S stabilizes past the support while W keeps
/// growing, so the finite max over n <= |supp x| is the sup.
pub fn predual_norm(x: &SparseVec, w: &WeightSeq) -> Result<Rational> {
    let tilde = decreasing_rearrangement(x);
    let mut best = Rational::zero();
    let mut partial = Rational::zero();
    for (i, v) in tilde.iter().enumerate() {
        partial += v;
        let ratio = &partial / w.prefix_sum(i + 1)?;
        if ratio > best {
            best = ratio;
        }
    }
    Ok(best)
}

/// Coordinate pairing of a d(w,1) element y against a predual element x,
/// plus the Abel-summation bound |<x,y>| <= ||x||_W ||y||_{w,1}. A false
/// flag is a library bug.
pub fn pairing_check(y: &SparseVec, x: &SparseVec, w: &WeightSeq) -> Result<(Rational, bool)> {
    let pairing = crate::dualspace::evaluate(x, y);
    let bound = predual_norm(x, w)? * lorentz_norm(y, w)?;
    Ok((pairing.clone(), pairing.abs() <= bound))
}

/// The norm-attaining predual element for y: order |y| decreasingly by pi
/// and take sum of sgn(y_{pi(i)}) w_i e_{pi(i)}. Pairing it with y gives
/// the d(w,1) norm exactly, and its own predual norm is 1.
pub fn attaining_predual(y: &SparseVec, w: &WeightSeq) -> Result<SparseVec> {
    if y.is_zero() {
        return Err(Error::invalid("the zero vector attains nothing"));
    }
    let mut entries: Vec<(usize, Rational)> = y.iter().map(|(i, v)| (i, v.clone())).collect();
    entries.sort_by(|a, b| b.1.abs().cmp(&a.1.abs()).then(a.0.cmp(&b.0)));
    let pairs: Result<Vec<(usize, Rational)>> = entries
        .iter()
        .enumerate()
        .map(|(pos, (idx, v))| {
            let sign = if *v > Rational::zero() {
                Rational::one()
            } else {
                -Rational::one()
            };
            Ok((*idx, sign * w.weight(pos + 1)?))
        })
        .collect();
    SparseVec::from_pairs(pairs?)
}

/// Some(lambda) with v_n = lambda w_n for all n <= depth, else None.
pub fn weights_proportional(
    v: &WeightSeq,
    w: &WeightSeq,
    depth: usize,
) -> Result<Option<Rational>> {
    if depth == 0 {
        return Err(Error::invalid("depth must be a positive integer"));
    }
    let lambda = v.weight(1)? / w.weight(1)?;
    for n in 2..=depth {
        if v.weight(n)? != &lambda * w.weight(n)? {
            return Ok(None);
        }
    }
    Ok(Some(lambda))
}

/// A lambda-scaled signed permutation T(x)_n = lambda eps_n x_{pi(n)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardIsometry {
    lambda: Rational,
    perm: SignedPermutation,
}

impl StandardIsometry {
    pub fn new(lambda: Rational, perm: SignedPermutation) -> Result<Self> {
        if lambda <= Rational::zero() {
            return Err(Error::invalid("lambda must be positive"));
        }
        Ok(StandardIsometry { lambda, perm })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn perm(&self) -> &SignedPermutation {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        StandardIsometry {
            lambda: Rational::one() / &self.lambda,
            perm: self.perm.inverse(),
        }
    }

    pub fn apply(&self, x: &SparseVec) -> Result<SparseVec> {
        Ok(self.perm.apply(x)?.scale(&self.lambda))
    }
}

pub fn standard_isometry_apply(t: &StandardIsometry, x: &SparseVec) -> Result<SparseVec> {
    t.apply(x)
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub n: usize,
    /// v_1/w_1, the only scale a candidate isometry can carry.
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub lambda: Rational,
    /// Some iff the truncated weight sequences are proportional.
    #[serde(serialize_with = "crate::rational::serialize_opt_rational")]
    pub proportional: Option<Rational>,
    pub isometries: Vec<SignedPermutation>,
    /// set when either weight sequence is an explicit finite list
    pub explicit_weights_warning: bool,
}

/// Scans all lambda-scaled signed permutations of [1..n] for isometries
/// between the truncations of d(v,1) and d(w,1), testing the map and its
/// inverse on all closed-form extreme points of the respective balls.
pub fn rigidity_check(v: &WeightSeq, w: &WeightSeq, n: usize) -> Result<RigidityReport> {
    if !(2..=6).contains(&n) {
        return Err(Error::BudgetExceeded(format!(
            "rigidity budget is 2 <= n <= 6, got {n}"
        )));
    }
    let lambda = v.weight(1)? / w.weight(1)?;
    let extremes_v = enumerate_lorentz_extremes(n, v)?;
    let extremes_w = enumerate_lorentz_extremes(n, w)?;
    let one = Rational::one();
    let mut isometries = Vec::new();
    for pi in (1..=n).permutations(n) {
        for mask in 0..1u32 << n {
            let eps: Vec<i8> = (0..n)
                .map(|i| if mask >> i & 1 == 0 { 1 } else { -1 })
                .collect();
            let perm = SignedPermutation::new(pi.clone(), eps)?;
            let t = StandardIsometry::new(lambda.clone(), perm.clone())?;
            let t_inv = t.inverse();
            let forward = extremes_v
                .iter()
                .map(|x| Ok(lorentz_norm(&t.apply(x)?, w)? == one))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            let backward = forward
                && extremes_w
                    .iter()
                    .map(|y| Ok(lorentz_norm(&t_inv.apply(y)?, v)? == one))
                    .collect::<Result<Vec<bool>>>()?
                    .into_iter()
                    .all(|b| b);
            if backward {
                isometries.push(perm);
            }
        }
    }
    Ok(RigidityReport {
        n,
        lambda,
        proportional: weights_proportional(v, w, n)?,
        isometries,
        explicit_weights_warning: v.asymptotic_warning() || w.asymptotic_warning(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sv(pairs: &[(usize, Rational)]) -> SparseVec {
        SparseVec::from_pairs(pairs.to_vec()).unwrap()
    }

    #[test]
    fn weight_generators() {
        let h = WeightSeq::harmonic();
        assert_eq!(h.weight(3).unwrap(), rat(1, 3));
        assert_eq!(h.prefix_sum(2).unwrap(), rat(3, 2));
        assert_eq!(h.prefix_sum(3).unwrap(), rat(11, 6));
        assert!(!h.asymptotic_warning());

        // 1/n^(1/2): exact at squares, rejected elsewhere
        let p = WeightSeq::power(rat(1, 2)).unwrap();
        assert_eq!(p.weight(1).unwrap(), rat(1, 1));
        assert!(p.weight(2).is_err());
        let p = WeightSeq::power(rat(1, 1)).unwrap();
        assert_eq!(p.weight(4).unwrap(), rat(1, 4));
        assert!(WeightSeq::power(rat(3, 2)).is_err());
        assert!(WeightSeq::power(rat(0, 1)).is_err());

        let e = WeightSeq::explicit(vec![rat(1, 1), rat(1, 3), rat(1, 9)]).unwrap();
        assert_eq!(e.weight(2).unwrap(), rat(1, 3));
        assert!(e.weight(4).is_err());
        assert!(e.asymptotic_warning());
        assert!(WeightSeq::explicit(vec![rat(1, 2), rat(1, 2)]).is_err());
        assert!(WeightSeq::explicit(vec![rat(1, 2), rat(-1, 3)]).is_err());
        assert!(WeightSeq::explicit(vec![]).is_err());
    }

    #[test]
    fn weight_json() {
        let h = WeightSeq::harmonic();
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"generator":"harmonic"}"#);
        let e: WeightSeq =
            serde_json::from_str(r#"{"generator":"explicit","values":["1","1/2","1/3"]}"#).unwrap();
        assert_eq!(e.weight(3).unwrap(), rat(1, 3));
        assert!(serde_json::from_str::<WeightSeq>(r#"{"generator":"geometric"}"#).is_err());
    }

    #[test]
    fn rearrangement_examples() {
        let x = sv(&[(2, rat(3, 1)), (3, rat(-1, 1))]);
        assert_eq!(decreasing_rearrangement(&x), vec![rat(3, 1), rat(1, 1)]);
        assert!(decreasing_rearrangement(&SparseVec::new()).is_empty());
        let x = sv(&[(1, rat(1, 2)), (5, rat(1, 2))]);
        assert_eq!(decreasing_rearrangement(&x), vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn norm_examples() {
        let h = WeightSeq::harmonic();
        let x = sv(&[(2, rat(3, 1)), (3, rat(-1, 1))]);
        assert_eq!(lorentz_norm(&x, &h).unwrap(), rat(7, 2));
        assert_eq!(lorentz_norm(&SparseVec::unit(5), &h).unwrap(), rat(1, 1));
        let x = sv(&[(1, rat(2, 3)), (2, rat(-2, 3))]);
        assert_eq!(lorentz_norm(&x, &h).unwrap(), rat(1, 1));
    }

    #[test]
    fn extreme_check_examples() {
        let h = WeightSeq::harmonic();
        assert!(lorentz_extreme_check(&sv(&[(1, rat(2, 3)), (2, rat(-2, 3))]), &h).unwrap());
        assert!(lorentz_extreme_check(&SparseVec::unit(1), &h).unwrap());
        // norm 1 but unequal heights
        let x = sv(&[(1, rat(7, 8)), (2, rat(1, 4))]);
        assert_eq!(lorentz_norm(&x, &h).unwrap(), rat(1, 1));
        assert!(!lorentz_extreme_check(&x, &h).unwrap());
        assert!(!lorentz_extreme_check(&SparseVec::new(), &h).unwrap());
    }

    #[test]
    fn extreme_enumeration_counts() {
        let h = WeightSeq::harmonic();
        assert_eq!(enumerate_lorentz_extremes(1, &h).unwrap().len(), 2);
        let pts = enumerate_lorentz_extremes(2, &h).unwrap();
        assert_eq!(pts.len(), 8);
        assert!(pts.contains(&sv(&[(1, rat(2, 3)), (2, rat(2, 3))])));
        assert_eq!(enumerate_lorentz_extremes(4, &h).unwrap().len(), 80);
        assert!(enumerate_lorentz_extremes(0, &h).is_err());
    }

    #[test]
    fn predual_examples() {
        let h = WeightSeq::harmonic();
        assert_eq!(predual_norm(&SparseVec::unit(1), &h).unwrap(), rat(1, 1));
        let x = sv(&[(1, rat(1, 1)), (2, rat(1, 1))]);
        assert_eq!(predual_norm(&x, &h).unwrap(), rat(4, 3));
        let x = sv(&[(1, rat(1, 1)), (2, rat(1, 1)), (3, rat(1, 1))]);
        assert_eq!(predual_norm(&x, &h).unwrap(), rat(18, 11));
        assert_eq!(predual_norm(&SparseVec::new(), &h).unwrap(), rat(0, 1));
    }

    #[test]
    fn pairing_examples() {
        let h = WeightSeq::harmonic();
        let y = sv(&[(1, rat(3, 1)), (3, rat(1, 1))]);
        let x = sv(&[(1, rat(1, 1)), (2, rat(1, 1))]);
        let (p, ok) = pairing_check(&y, &x, &h).unwrap();
        assert_eq!(p, rat(3, 1));
        assert!(ok);
        let (p, ok) = pairing_check(&y, &SparseVec::new(), &h).unwrap();
        assert_eq!(p, rat(0, 1));
        assert!(ok);
    }

    #[test]
    fn attaining_construction() {
        let h = WeightSeq::harmonic();
        let y = sv(&[(2, rat(-5, 2)), (4, rat(1, 3)), (7, rat(1, 1))]);
        let x = attaining_predual(&y, &h).unwrap();
        assert_eq!(crate::dualspace::evaluate(&x, &y), lorentz_norm(&y, &h).unwrap());
        assert_eq!(predual_norm(&x, &h).unwrap(), rat(1, 1));
        assert!(attaining_predual(&SparseVec::new(), &h).is_err());
    }

    #[test]
    fn proportionality_examples() {
        let h = WeightSeq::harmonic();
        let v = WeightSeq::explicit(vec![rat(2, 1), rat(1, 1), rat(2, 3), rat(1, 2)]).unwrap();
        assert_eq!(weights_proportional(&v, &h, 4).unwrap(), Some(rat(2, 1)));
        let w = WeightSeq::explicit(vec![rat(1, 1), rat(1, 3), rat(1, 9)]).unwrap();
        assert_eq!(weights_proportional(&h, &w, 3).unwrap(), None);
        assert_eq!(weights_proportional(&h, &h, 5).unwrap(), Some(rat(1, 1)));
        assert!(weights_proportional(&h, &h, 0).is_err());
    }

    #[test]
    fn standard_isometry_examples() {
        let swap = SignedPermutation::new(vec![2, 1], vec![1, 1]).unwrap();
        let t = StandardIsometry::new(rat(1, 1), swap).unwrap();
        let x = sv(&[(1, rat(3, 1)), (2, rat(5, 1))]);
        let y = t.apply(&x).unwrap();
        assert_eq!(y, sv(&[(1, rat(5, 1)), (2, rat(3, 1))]));

        let t = StandardIsometry::new(
            rat(2, 1),
            SignedPermutation::new(vec![1, 2], vec![-1, 1]).unwrap(),
        )
        .unwrap();
        let y = t.apply(&x).unwrap();
        assert_eq!(y, sv(&[(1, rat(-6, 1)), (2, rat(10, 1))]));

        assert!(StandardIsometry::new(rat(0, 1), SignedPermutation::identity(2)).is_err());
        let t = StandardIsometry::new(rat(1, 1), SignedPermutation::identity(2)).unwrap();
        assert!(t.apply(&SparseVec::unit(3)).is_err());
    }

    #[test]
    fn scaled_isometry_maps_spheres() {
        // v = 2w: every scaled signed permutation maps the d(v,1) sphere to
        // the d(w,1) sphere on the extreme points
        let w = WeightSeq::harmonic();
        let v = WeightSeq::explicit(vec![rat(2, 1), rat(1, 1), rat(2, 3)]).unwrap();
        let t = StandardIsometry::new(
            rat(2, 1),
            SignedPermutation::new(vec![3, 1, 2], vec![1, -1, 1]).unwrap(),
        )
        .unwrap();
        for x in enumerate_lorentz_extremes(3, &v).unwrap() {
            assert_eq!(lorentz_norm(&x, &v).unwrap(), rat(1, 1));
            assert_eq!(lorentz_norm(&t.apply(&x).unwrap(), &w).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn rigidity_examples() {
        let h = WeightSeq::harmonic();
        let v2 = WeightSeq::explicit(vec![rat(2, 1), rat(1, 1), rat(2, 3)]).unwrap();
        let report = rigidity_check(&v2, &h, 3).unwrap();
        assert_eq!(report.lambda, rat(2, 1));
        assert_eq!(report.proportional, Some(rat(2, 1)));
        assert_eq!(report.isometries.len(), 48);
        assert!(report.explicit_weights_warning);

        let w = WeightSeq::explicit(vec![rat(1, 1), rat(1, 3), rat(1, 9)]).unwrap();
        let report = rigidity_check(&h, &w, 3).unwrap();
        assert_eq!(report.proportional, None);
        assert!(report.isometries.is_empty());

        let report = rigidity_check(&h, &h, 3).unwrap();
        assert_eq!(report.lambda, rat(1, 1));
        assert_eq!(report.isometries.len(), 48);
        assert!(!report.explicit_weights_warning);

        assert!(rigidity_check(&h, &h, 7).is_err());
    }

    #[test]
    fn norm_symmetry_under_signed_permutation() {
        let h = WeightSeq::harmonic();
        let x = sv(&[(1, rat(1, 2)), (2, rat(-3, 4)), (3, rat(1, 5))]);
        let base = lorentz_norm(&x, &h).unwrap();
        for pi in (1..=3usize).permutations(3) {
            for mask in 0..8u32 {
                let eps: Vec<i8> = (0..3)
                    .map(|i| if mask >> i & 1 == 0 { 1 } else { -1 })
                    .collect();
                let t = SignedPermutation::new(pi.clone(), eps).unwrap();
                assert_eq!(lorentz_norm(&t.apply(&x).unwrap(), &h).unwrap(), base);
            }
        }
    }
}
