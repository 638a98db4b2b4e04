//! Agent orderings: a bijection from vertices to labels `1..=n`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Labels are 1-based; `sequence()[i]` is the vertex carrying label `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ordering {
    labels: Vec<usize>,
    sequence: Vec<Vertex>,
}

impl Ordering {
    /// From `labels[v]`, the label of vertex `v`.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::argument("an ordering needs at least one vertex"));
        }
        let mut sequence = vec![usize::MAX; n];
        for (v, &label) in labels.iter().enumerate() {
            if label == 0 || label > n {
                return Err(Error::argument(format!(
                    "label {label} of vertex {v} outside 1..={n}"
                )));
            }
            if sequence[label - 1] != usize::MAX {
                return Err(Error::argument(format!("label {label} used twice")));
            }
            sequence[label - 1] = v;
        }
        Ok(Ordering { labels, sequence })
    }

    /// From the vertices listed in label order.
    pub fn from_sequence(sequence: Vec<Vertex>) -> Result<Self> {
        let n = sequence.len();
        if n == 0 {
            return Err(Error::argument("an ordering needs at least one vertex"));
        }
        let mut labels = vec![0; n];
        for (i, &v) in sequence.iter().enumerate() {
            if v >= n {
                return Err(Error::argument(format!("vertex {v} outside 0..{n}")));
            }
            if labels[v] != 0 {
                return Err(Error::argument(format!("vertex {v} listed twice")));
            }
            labels[v] = i + 1;
        }
        Ok(Ordering { labels, sequence })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ordering::from_sequence((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: Vertex) -> usize {
        self.labels[v]
    }

    /// The vertex holding `label` (1-based).
    pub fn vertex(&self, label: usize) -> Vertex {
        self.sequence[label - 1]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.sequence
    }
}

impl TryFrom<Vec<usize>> for Ordering {
    type Error = Error;

    fn try_from(labels: Vec<usize>) -> Result<Self> {
        Ordering::from_labels(labels)
    }
}

impl From<Ordering> for Vec<usize> {
    fn from(o: Ordering) -> Self {
        o.labels
    }
}

/// One line: `label(v0) label(v1) ... label(v_{n-1})`.
impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let labels = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad label {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ordering::from_labels(labels)
    }
}

/// Uniformly random ordering, deterministic in `seed`.
pub fn random_ordering(n: usize, seed: u64) -> Result<Ordering> {
    random_ordering_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_ordering_with<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Ordering> {
    let mut sequence: Vec<Vertex> = (0..n).collect();
    sequence.shuffle(rng);
    Ordering::from_sequence(sequence)
}
