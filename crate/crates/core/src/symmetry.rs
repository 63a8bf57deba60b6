//! Automorphisms of `G_k`: the rotation ρ, the anti-diagonal reflection σ,
//! words over them, and translations.

use std::fmt;
use std::str::FromStr;

use crate::gaussian::{DenseModulus, Node};
use crate::network::{Edge, NetworkError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// Counter-clockwise quarter turn, `a+bi ↦ -b+ai`.
    Rho,
    /// Reflection in the line `re = -im`, `a+bi ↦ -b-ai`. Acts on canonical
    /// labels; it preserves the diamond and its interior edges but not every
    /// wrap edge.
    Sigma,
}

impl Symmetry {
    pub fn apply(self, v: Node, m: &DenseModulus) -> Node {
        match self {
            Symmetry::Rho => rho(v, m),
            Symmetry::Sigma => sigma(v, m),
        }
    }
}

pub fn rho(v: Node, m: &DenseModulus) -> Node {
    m.reduce_parts(-v.im, v.re)
}

pub fn sigma(v: Node, m: &DenseModulus) -> Node {
    m.reduce_parts(-v.im, -v.re)
}

/// `(v + t) mod α_k`.
pub fn translate(v: Node, t: Node, m: &DenseModulus) -> Node {
    m.add(v, t)
}

/// A composition of ρ and σ, written left to right and applied right to left:
/// `[Rho, Rho, Rho, Sigma]` is ρ³σ, i.e. σ first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymmetryWord(Vec<Symmetry>);

impl SymmetryWord {
    pub fn identity() -> Self {
        SymmetryWord(Vec::new())
    }

    pub fn new(atoms: impl IntoIterator<Item = Symmetry>) -> Self {
        SymmetryWord(atoms.into_iter().collect())
    }

    /// `ρ^r σ^s`.
    pub fn rho_pow_sigma(r: usize, s: usize) -> Self {
        let mut atoms = vec![Symmetry::Rho; r];
        atoms.extend(std::iter::repeat_n(Symmetry::Sigma, s));
        SymmetryWord(atoms)
    }

    pub fn atoms(&self) -> &[Symmetry] {
        &self.0
    }

    pub fn then(&self, outer: &SymmetryWord) -> SymmetryWord {
        let mut atoms = outer.0.clone();
        atoms.extend_from_slice(&self.0);
        SymmetryWord(atoms)
    }

    pub fn apply(&self, v: Node, m: &DenseModulus) -> Node {
        self.0.iter().rev().fold(v, |acc, s| s.apply(acc, m))
    }

    pub fn apply_edge(&self, e: &Edge, m: &DenseModulus) -> Result<Edge, NetworkError> {
        Edge::new(self.apply(e.u(), m), self.apply(e.v(), m), m)
    }

    /// Whether the word maps horizontal edges to vertical ones.
    pub fn flips_axis(&self) -> bool {
        self.0.len() % 2 == 1
    }
}

impl fmt::Display for SymmetryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let atom = self.0[i];
            let run = self.0[i..].iter().take_while(|&&a| a == atom).count();
            f.write_str(match atom {
                Symmetry::Rho => "rho",
                Symmetry::Sigma => "sigma",
            })?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse symmetry word {0:?}")]
pub struct ParseSymmetryError(String);

/// Parses words such as `"rho^3sigma"`, `"rho rho sigma"` or `"1"`.
impl FromStr for SymmetryWord {
    type Err = ParseSymmetryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSymmetryError(s.to_string());
        let mut rest: &str = s.trim();
        if rest == "1" {
            return Ok(SymmetryWord::identity());
        }
        let mut atoms = Vec::new();
        while !rest.is_empty() {
            rest = rest.trim_start();
            let atom = if let Some(r) = rest.strip_prefix("rho") {
                rest = r;
                Symmetry::Rho
            } else if let Some(r) = rest.strip_prefix("sigma") {
                rest = r;
                Symmetry::Sigma
            } else {
                return Err(err());
            };
            let mut count = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let digits = r.chars().take_while(|c| c.is_ascii_digit()).count();
                count = r[..digits].parse().map_err(|_| err())?;
                rest = &r[digits..];
            }
            atoms.extend(std::iter::repeat_n(atom, count));
            rest = rest.trim_start();
        }
        if atoms.is_empty() {
            return Err(err());
        }
        Ok(SymmetryWord(atoms))
    }
}
