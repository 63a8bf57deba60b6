//! Exact Gaussian-integer arithmetic and reduction modulo `α_k = k + (k+1)i`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted network radius. Keeps every intermediate product of the
/// reduction comfortably inside `i128`.
pub const MAX_K: u32 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("gaussian integer overflow in {op}: ({lhs}) {op} ({rhs})")]
    Overflow {
        op: &'static str,
        lhs: GInt,
        rhs: GInt,
    },
    #[error("network radius must satisfy 1 <= k <= {MAX_K}, got {0}")]
    InvalidRadius(u64),
}

/// A Gaussian integer `re + im·i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GInt {
    pub re: i64,
    pub im: i64,
}

impl GInt {
    pub const ZERO: GInt = GInt { re: 0, im: 0 };
    pub const ONE: GInt = GInt { re: 1, im: 0 };
    pub const I: GInt = GInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GInt { re, im }
    }

    pub fn checked_add(self, rhs: GInt) -> Result<GInt, ArithmeticError> {
        let overflow = || ArithmeticError::Overflow { op: "+", lhs: self, rhs };
        Ok(GInt {
            re: self.re.checked_add(rhs.re).ok_or_else(overflow)?,
            im: self.im.checked_add(rhs.im).ok_or_else(overflow)?,
        })
    }

    pub fn checked_sub(self, rhs: GInt) -> Result<GInt, ArithmeticError> {
        let overflow = || ArithmeticError::Overflow { op: "-", lhs: self, rhs };
        Ok(GInt {
            re: self.re.checked_sub(rhs.re).ok_or_else(overflow)?,
            im: self.im.checked_sub(rhs.im).ok_or_else(overflow)?,
        })
    }

    /// `(a+bi)(c+di) = (ac-bd) + (ad+bc)i`
    pub fn checked_mul(self, rhs: GInt) -> Result<GInt, ArithmeticError> {
        let overflow = || ArithmeticError::Overflow { op: "*", lhs: self, rhs };
        let ac = self.re.checked_mul(rhs.re).ok_or_else(overflow)?;
        let bd = self.im.checked_mul(rhs.im).ok_or_else(overflow)?;
        let ad = self.re.checked_mul(rhs.im).ok_or_else(overflow)?;
        let bc = self.im.checked_mul(rhs.re).ok_or_else(overflow)?;
        Ok(GInt {
            re: ac.checked_sub(bd).ok_or_else(overflow)?,
            im: ad.checked_add(bc).ok_or_else(overflow)?,
        })
    }

    pub fn conj(self) -> GInt {
        GInt::new(self.re, -self.im)
    }

    /// `re² + im²`. Computed in `u128`, so it cannot overflow.
    pub fn norm(self) -> u128 {
        let re = self.re.unsigned_abs() as u128;
        let im = self.im.unsigned_abs() as u128;
        re * re + im * im
    }

    /// Lee weight `|re| + |im|`.
    pub fn lee_weight(self) -> u64 {
        self.re.unsigned_abs() + self.im.unsigned_abs()
    }

    /// Whether `self` is an exact `Z[i]`-multiple of `divisor`.
    pub fn is_multiple_of(self, divisor: GInt) -> bool {
        let n = divisor.norm() as i128;
        if n == 0 {
            return self == GInt::ZERO;
        }
        // self / divisor = self·conj(divisor) / ‖divisor‖
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, d) = (divisor.re as i128, divisor.im as i128);
        let re = a * c + b * d;
        let im = b * c - a * d;
        re % n == 0 && im % n == 0
    }
}

impl fmt::Display for GInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

// Operator forms panic on overflow; use the `checked_*` methods to get an error.
impl std::ops::Add for GInt {
    type Output = GInt;
    fn add(self, rhs: GInt) -> GInt {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Sub for GInt {
    type Output = GInt;
    fn sub(self, rhs: GInt) -> GInt {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Mul for GInt {
    type Output = GInt;
    fn mul(self, rhs: GInt) -> GInt {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Neg for GInt {
    type Output = GInt;
    fn neg(self) -> GInt {
        GInt::ZERO - self
    }
}

/// A canonical residue modulo `α_k`: the unique representative `a+bi` of its
/// class with `|a| + |b| <= k`.
///
/// Nodes order by `(im, re)` lexicographically; this is the order used for
/// edge endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Node {
    pub re: i64,
    pub im: i64,
}

impl Node {
    pub const ORIGIN: Node = Node { re: 0, im: 0 };

    /// Builds a node from raw coordinates without checking that they are
    /// canonical for any particular `k`.
    pub const fn new(re: i64, im: i64) -> Self {
        Node { re, im }
    }

    pub fn to_gint(self) -> GInt {
        GInt::new(self.re, self.im)
    }

    pub fn lee_weight(self) -> u64 {
        self.to_gint().lee_weight()
    }

    /// Layout order: rows top to bottom (`im` descending), then left to right.
    pub fn layout_cmp(&self, other: &Node) -> std::cmp::Ordering {
        other.im.cmp(&self.im).then(self.re.cmp(&other.re))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.im, self.re).cmp(&(other.im, other.re))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Node> for GInt {
    fn from(n: Node) -> GInt {
        n.to_gint()
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_gint(), f)
    }
}

// Serialized as the pair `[re, im]`.
impl Serialize for Node {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.re, self.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[i64; 2]>::deserialize(d)?;
        Ok(Node { re, im })
    }
}

/// The dense modulus `α_k = k + (k+1)i` with `n = ‖α_k‖ = 2k² + 2k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DenseModulus {
    k: u32,
    alpha: GInt,
    n: u64,
}

impl DenseModulus {
    pub fn new(k: u32) -> Result<Self, ArithmeticError> {
        if k == 0 || k > MAX_K {
            return Err(ArithmeticError::InvalidRadius(k as u64));
        }
        let k64 = k as i64;
        let alpha = GInt::new(k64, k64 + 1);
        let n = alpha.norm() as u64;
        Ok(DenseModulus { k, alpha, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alpha(&self) -> GInt {
        self.alpha
    }

    /// Number of residue classes, `2k² + 2k + 1`.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn contains(&self, v: Node) -> bool {
        v.lee_weight() <= self.k as u64
    }

    /// Reduces `g` to its canonical representative.
    ///
    /// The quotient estimate rounds `g·conj(α)/‖α‖` componentwise to the
    /// nearest integer; the canonical representative is then one of the nine
    /// neighbours of that estimate in the quotient lattice.
    pub fn reduce(&self, g: GInt) -> Node {
        let n = self.n as i128;
        let (a, b) = (g.re as i128, g.im as i128);
        let (c, d) = (self.alpha.re as i128, self.alpha.im as i128);
        // g·conj(α) = (ac + bd) + (bc - ad)i
        let q_re = round_div(a * c + b * d, n);
        let q_im = round_div(b * c - a * d, n);
        let k = self.k as i128;
        for dq_re in [0, -1, 1] {
            for dq_im in [0, -1, 1] {
                let (x, y) = (q_re + dq_re, q_im + dq_im);
                // r = g - qα, qα = (xc - yd) + (xd + yc)i
                let r_re = a - (x * c - y * d);
                let r_im = b - (x * d + y * c);
                if r_re.abs() + r_im.abs() <= k {
                    return Node::new(r_re as i64, r_im as i64);
                }
            }
        }
        unreachable!("the diamond |a|+|b| <= k is a complete residue system mod α_k")
    }

    pub fn reduce_parts(&self, re: i64, im: i64) -> Node {
        self.reduce(GInt::new(re, im))
    }

    /// `(u + v) mod α_k` for canonical inputs.
    pub fn add(&self, u: Node, v: Node) -> Node {
        self.reduce_parts(u.re + v.re, u.im + v.im)
    }

    /// `(u - v) mod α_k` for canonical inputs.
    pub fn sub(&self, u: Node, v: Node) -> Node {
        self.reduce_parts(u.re - v.re, u.im - v.im)
    }

    /// Every canonical residue, in layout order.
    pub fn diamond(&self) -> Vec<Node> {
        let k = self.k as i64;
        let mut out = Vec::with_capacity(self.n as usize);
        for im in (-k..=k).rev() {
            let span = k - im.abs();
            for re in -span..=span {
                out.push(Node::new(re, im));
            }
        }
        out
    }
}

/// Nearest-integer division, ties toward zero. `n > 0`.
fn round_div(x: i128, n: i128) -> i128 {
    let q = x.div_euclid(n);
    let r = x.rem_euclid(n);
    match (2 * r).cmp(&n) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q >= 0 {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Free-function form of [`DenseModulus::reduce`].
pub fn canonical_mod(g: GInt, m: &DenseModulus) -> Node {
    m.reduce(g)
}

/// Free-function form of [`GInt::norm`].
pub fn norm(g: GInt) -> u128 {
    g.norm()
}
