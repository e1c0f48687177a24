//! Finitely supported vectors and index sets over 1-based coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// A strictly increasing finite list of positive integers.
///
/// Serialized as a JSON array of integers, e.g. `[3,5,9]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet {
    elems: Vec<usize>,
}

impl IndexSet {
    pub fn new(elems: Vec<usize>) -> Result<Self> {
        for w in elems.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::invalid(format!(
                    "index set must be strictly increasing, got {:?}",
                    elems
                )));
            }
        }
        if elems.first().is_some_and(|&f| f == 0) {
            return Err(Error::invalid("indices are 1-based, index 0 rejected"));
        }
        Ok(IndexSet { elems })
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.elems.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.elems.last().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = String;
    fn try_from(v: Vec<usize>) -> std::result::Result<Self, String> {
        IndexSet::new(v).map_err(|e| e.to_string())
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Vec<usize> {
        s.elems
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A finitely supported map from positive index to nonzero rational.
///
/// Represents both vectors of V1 / d(w,1) and functionals via coordinates.
/// Zero coordinates are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SparseVec {
    coords: BTreeMap<usize, Rational>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Builds from (index, value) pairs; zero values are dropped, repeated
    /// indices and index 0 are rejected.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut coords = BTreeMap::new();
        for (i, v) in pairs {
            if i == 0 {
                return Err(Error::invalid("indices are 1-based, index 0 rejected"));
            }
            if v.is_zero() {
                continue;
            }
            if coords.insert(i, v).is_some() {
                return Err(Error::invalid(format!("repeated index {i}")));
            }
        }
        Ok(SparseVec { coords })
    }

    /// The standard unit vector e_i.
    pub fn unit(i: usize) -> Self {
        let mut coords = BTreeMap::new();
        assert!(i >= 1, "indices are 1-based");
        coords.insert(i, Rational::from_integer(1.into()));
        SparseVec { coords }
    }

    pub fn get(&self, i: usize) -> Rational {
        self.coords.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, v: Rational) {
        assert!(i >= 1, "indices are 1-based");
        if v.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, v);
        }
    }

    /// Largest support index, 0 for the zero vector.
    pub fn max_index(&self) -> usize {
        self.coords.keys().next_back().copied().unwrap_or(0)
    }

    pub fn min_index(&self) -> Option<usize> {
        self.coords.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn support(&self) -> IndexSet {
        IndexSet::new(self.coords.keys().copied().collect()).expect("keys are sorted")
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().map(|(&i, v)| (i, v))
    }

    pub fn scale(&self, factor: &Rational) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        let coords = self.coords.iter().map(|(&i, v)| (i, v * factor)).collect();
        SparseVec { coords }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (i, v) in other.iter() {
            let sum = out.get(i) + v;
            out.set(i, sum);
        }
        out
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Rational::from_integer((-1).into()))
    }

    /// Dense embedding into coordinates [1, dim]; errors if the support
    /// overflows the requested dimension.
    pub fn to_dense(&self, dim: usize) -> Result<Vec<Rational>> {
        if self.max_index() > dim {
            return Err(Error::invalid(format!(
                "support reaches {} but embedding dimension is {dim}",
                self.max_index()
            )));
        }
        let mut out = vec![Rational::zero(); dim];
        for (i, v) in self.iter() {
            out[i - 1] = v.clone();
        }
        Ok(out)
    }
}

impl Serialize for SparseVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            coords: BTreeMap<String, String>,
        }
        let coords = self
            .coords
            .iter()
            .map(|(i, v)| (i.to_string(), format_rational(v)))
            .collect();
        Wire { coords }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            coords: BTreeMap<String, String>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let mut pairs = Vec::with_capacity(wire.coords.len());
        for (k, v) in wire.coords {
            let i: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad index {k:?}")))?;
            let r = parse_rational(&v).map_err(|e| D::Error::custom(e.to_string()))?;
            pairs.push((i, r));
        }
        SparseVec::from_pairs(pairs).map_err(|e| D::Error::custom(e.to_string()))
    }
}
