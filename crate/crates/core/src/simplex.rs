use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An abstract simplex, identified by its sorted vertex set.
///
/// Ordered by dimension first, then lexicographically by vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Sorts the vertices; rejects empty or repeated vertex lists.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("empty vertex list".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    /// Panics on invalid input; meant for literals in tests and examples.
    pub fn from_slice(vertices: &[u32]) -> Self {
        Simplex::new(vertices.to_vec()).expect("valid simplex literal")
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces, in lexicographic order of the remaining vertices.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .rev()
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect(),
                )
            })
            .collect()
    }

    /// `self` is a face of `other` (not necessarily proper).
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    pub fn is_facet_of(&self, other: &Simplex) -> bool {
        self.0.len() + 1 == other.0.len() && self.is_face_of(other)
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_rejects() {
        assert_eq!(Simplex::new(vec![2, 0, 1]).unwrap().vertices(), &[0, 1, 2]);
        assert!(Simplex::new(vec![]).is_err());
        assert!(Simplex::new(vec![1, 1]).is_err());
    }

    #[test]
    fn facets_of_triangle() {
        let t = Simplex::from_slice(&[0, 1, 2]);
        let f = t.facets();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|s| s.is_facet_of(&t)));
        assert!(Simplex::from_slice(&[4]).facets().is_empty());
        assert!(!Simplex::from_slice(&[0]).is_facet_of(&t));
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![
            Simplex::from_slice(&[0, 1]),
            Simplex::from_slice(&[2]),
            Simplex::from_slice(&[0, 2]),
            Simplex::from_slice(&[1]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{1}", "{2}", "{0,1}", "{0,2}"]);
    }
}
