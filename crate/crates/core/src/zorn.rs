//! Exact arithmetic in the split octonion algebra over F2.
//!
//! Elements are Zorn vector matrices: a 2x2 array with scalar diagonal
//! entries and 3-vector off-diagonal entries, all over F2. Multiplication
//! mixes the dot and cross products of the off-diagonal vectors. The 120
//! unit-norm matrices form the smallest nonassociative simple Moufang loop
//! under this product.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZornError {
    /// Inverse or order requested for a matrix with determinant 0.
    #[error("singular vector matrix: determinant is 0")]
    Singular,
    #[error("bad element notation `{0}`: {1}")]
    Parse(String, String),
}

/// A vector in F2^3, packed into the low three bits (first coordinate is
/// the most significant of the three).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FVec3(u8);

impl FVec3 {
    pub const ZERO: FVec3 = FVec3(0);

    pub fn new(a1: u8, a2: u8, a3: u8) -> FVec3 {
        debug_assert!(a1 < 2 && a2 < 2 && a3 < 2);
        FVec3(a1 << 2 | a2 << 1 | a3)
    }

    /// Bits `0b_a1_a2_a3`, i.e. the binary reading "a1a2a3".
    pub fn from_bits(bits: u8) -> FVec3 {
        debug_assert!(bits < 8);
        FVec3(bits & 7)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Coordinate 0, 1 or 2.
    pub fn coord(self, i: usize) -> u8 {
        debug_assert!(i < 3);
        (self.0 >> (2 - i)) & 1
    }

    /// Integer coordinate sum (not reduced mod 2).
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Standard dot product, reduced mod 2.
    pub fn dot(self, other: FVec3) -> u8 {
        (self.0 & other.0).count_ones() as u8 & 1
    }

    /// Standard vector product with coordinates reduced mod 2.
    pub fn cross(self, other: FVec3) -> FVec3 {
        let (a1, a2, a3) = (self.coord(0), self.coord(1), self.coord(2));
        let (b1, b2, b3) = (other.coord(0), other.coord(1), other.coord(2));
        FVec3::new(
            (a2 & b3) ^ (a3 & b2),
            (a3 & b1) ^ (a1 & b3),
            (a1 & b2) ^ (a2 & b1),
        )
    }
}

impl std::ops::Add for FVec3 {
    type Output = FVec3;

    // Coordinatewise addition mod 2 is exactly xor on the packed bits.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, other: FVec3) -> FVec3 {
        FVec3(self.0 ^ other.0)
    }
}

impl fmt::Display for FVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.coord(0), self.coord(1), self.coord(2))
    }
}

impl fmt::Debug for FVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// A Zorn vector matrix over F2, packed into one byte.
///
/// Bit layout, most significant first: `a a1 a2 a3 b1 b2 b3 b` where `a` is
/// the top-left scalar, `alpha = a1a2a3` the top-right vector, `beta =
/// b1b2b3` the bottom-left vector and `b` the bottom-right scalar. The
/// derived `Ord` on the packed byte is the canonical element order used for
/// loop element numbering and all exports.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VMatrix(u8);

impl VMatrix {
    /// The neutral element: 1 on the diagonal, zero vectors off it.
    pub const IDENTITY: VMatrix = VMatrix(0b1000_0001);

    pub fn new(a: u8, alpha: FVec3, beta: FVec3, b: u8) -> VMatrix {
        debug_assert!(a < 2 && b < 2);
        VMatrix(a << 7 | alpha.bits() << 4 | beta.bits() << 1 | b)
    }

    pub fn from_byte(byte: u8) -> VMatrix {
        VMatrix(byte)
    }

    pub fn byte(self) -> u8 {
        self.0
    }

    pub fn a(self) -> u8 {
        self.0 >> 7
    }

    pub fn alpha(self) -> FVec3 {
        FVec3::from_bits((self.0 >> 4) & 7)
    }

    pub fn beta(self) -> FVec3 {
        FVec3::from_bits((self.0 >> 1) & 7)
    }

    pub fn b(self) -> u8 {
        self.0 & 1
    }

    /// The involution with off-diagonal vectors `alpha`, `beta`. The
    /// diagonal is forced by unit determinant in characteristic 2:
    /// `a = b = 1 + alpha.beta`. Returns `None` for `alpha = beta = 0`,
    /// which would be the neutral element.
    pub fn involution(alpha: FVec3, beta: FVec3) -> Option<VMatrix> {
        let a = 1 ^ alpha.dot(beta);
        let x = VMatrix::new(a, alpha, beta, a);
        (x != VMatrix::IDENTITY).then_some(x)
    }

    /// The order-3 element with top-left entry `a` (so bottom-right is
    /// `1 + a`). Unit determinant requires `alpha.beta = 1`; returns `None`
    /// otherwise.
    pub fn order3(alpha: FVec3, beta: FVec3, a: u8) -> Option<VMatrix> {
        (alpha.dot(beta) == 1).then(|| VMatrix::new(a, alpha, beta, a ^ 1))
    }

    /// Determinant `ab - alpha.beta` mod 2; this is the norm.
    pub fn det(self) -> u8 {
        (self.a() & self.b()) ^ self.alpha().dot(self.beta())
    }

    /// Inverse of a unit-determinant matrix: swap the diagonal, keep the
    /// vectors (negation is trivial mod 2).
    pub fn inverse(self) -> Result<VMatrix, ZornError> {
        if self.det() == 0 {
            return Err(ZornError::Singular);
        }
        Ok(VMatrix::new(self.b(), self.alpha(), self.beta(), self.a()))
    }

    /// Element order in the norm-1 loop, read off the diagonal: order 2
    /// exactly when `a = b` and the element is not neutral, order 3 exactly
    /// when `a != b`.
    pub fn order(self) -> Result<u8, ZornError> {
        if self.det() == 0 {
            return Err(ZornError::Singular);
        }
        Ok(if self == VMatrix::IDENTITY {
            1
        } else if self.a() == self.b() {
            2
        } else {
            3
        })
    }

    /// All 120 unit-determinant matrices in canonical (packed byte) order.
    pub fn unit_elements() -> Vec<VMatrix> {
        (0..=255u8)
            .map(VMatrix::from_byte)
            .filter(|x| x.det() == 1)
            .collect()
    }

    /// Compact notation: `e` for the neutral element, `inv(alpha,beta)` for
    /// involutions, `tri(alpha,beta,a)` for order-3 elements, and the full
    /// bracket form for singular matrices.
    pub fn shorthand(self) -> String {
        match self.order() {
            Ok(1) => "e".to_string(),
            Ok(2) => format!("inv({},{})", self.alpha(), self.beta()),
            Ok(3) => format!("tri({},{},{})", self.alpha(), self.beta(), self.a()),
            _ => self.to_string(),
        }
    }
}

/// Zorn vector matrix product. Subtraction in the defining formula is
/// addition here since the characteristic is 2.
impl std::ops::Mul for VMatrix {
    type Output = VMatrix;

    fn mul(self, y: VMatrix) -> VMatrix {
        let (a, al, be, b) = (self.a(), self.alpha(), self.beta(), self.b());
        let (c, ga, de, d) = (y.a(), y.alpha(), y.beta(), y.b());
        let scale = |s: u8, v: FVec3| if s == 1 { v } else { FVec3::ZERO };
        VMatrix::new(
            (a & c) ^ al.dot(de),
            scale(a, ga) + scale(d, al) + be.cross(de),
            scale(c, be) + scale(b, de) + al.cross(ga),
            be.dot(ga) ^ (b & d),
        )
    }
}

impl fmt::Display for VMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}|{}|{}|{}]",
            self.a(),
            self.alpha(),
            self.beta(),
            self.b()
        )
    }
}

impl fmt::Debug for VMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shorthand())
    }
}

fn parse_bit(text: &str, s: &str) -> Result<u8, ZornError> {
    match s {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(ZornError::Parse(
            text.to_string(),
            format!("expected a bit, got `{s}`"),
        )),
    }
}

fn parse_vec(text: &str, s: &str) -> Result<FVec3, ZornError> {
    let s = s.trim();
    if s.len() != 3 || !s.bytes().all(|c| c == b'0' || c == b'1') {
        return Err(ZornError::Parse(
            text.to_string(),
            format!("expected three bits, got `{s}`"),
        ));
    }
    let bits = s.bytes().fold(0u8, |acc, c| acc << 1 | (c - b'0'));
    Ok(FVec3::from_bits(bits))
}

impl FromStr for VMatrix {
    type Err = ZornError;

    /// Accepts `e`, the bracket form `[a|a1a2a3|b1b2b3|b]`, and the
    /// shorthands `inv(a1a2a3,b1b2b3)` and `tri(a1a2a3,b1b2b3,a)`.
    fn from_str(text: &str) -> Result<VMatrix, ZornError> {
        let bad = |msg: &str| ZornError::Parse(text.to_string(), msg.to_string());
        let s = text.trim();
        if s == "e" {
            return Ok(VMatrix::IDENTITY);
        }
        if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let parts: Vec<&str> = body.split('|').collect();
            if parts.len() != 4 {
                return Err(bad("bracket form needs four `|`-separated fields"));
            }
            return Ok(VMatrix::new(
                parse_bit(text, parts[0].trim())?,
                parse_vec(text, parts[1])?,
                parse_vec(text, parts[2])?,
                parse_bit(text, parts[3].trim())?,
            ));
        }
        if let Some(body) = s.strip_prefix("inv(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 2 {
                return Err(bad("inv() takes two vectors"));
            }
            let alpha = parse_vec(text, parts[0])?;
            let beta = parse_vec(text, parts[1])?;
            return VMatrix::involution(alpha, beta)
                .ok_or_else(|| bad("inv(000,000) is the neutral element, not an involution"));
        }
        if let Some(body) = s.strip_prefix("tri(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 3 {
                return Err(bad("tri() takes two vectors and a bit"));
            }
            let alpha = parse_vec(text, parts[0])?;
            let beta = parse_vec(text, parts[1])?;
            let a = parse_bit(text, parts[2].trim())?;
            return VMatrix::order3(alpha, beta, a)
                .ok_or_else(|| bad("tri() requires alpha.beta = 1 (unit determinant)"));
        }
        Err(bad("unrecognized element notation"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: u8) -> FVec3 {
        FVec3::from_bits(bits)
    }

    fn x0() -> VMatrix {
        VMatrix::involution(v(0b111), v(0b111)).unwrap()
    }

    fn x1() -> VMatrix {
        VMatrix::involution(v(0b110), v(0b100)).unwrap()
    }

    fn y0() -> VMatrix {
        VMatrix::order3(v(0b011), v(0b110), 1).unwrap()
    }

    /// Order by repeated multiplication, the oracle for the diagonal
    /// criterion.
    fn order_by_mul(x: VMatrix) -> u8 {
        let mut acc = x;
        for k in 1..=4 {
            if acc == VMatrix::IDENTITY {
                return k;
            }
            acc = acc * x;
        }
        panic!("element order exceeds 4: {x}");
    }

    #[test]
    fn dot_examples() {
        assert_eq!(v(0b111).dot(v(0b111)), 1);
        assert_eq!(v(0b100).dot(v(0b010)), 0);
        assert_eq!(v(0b110).dot(v(0b011)), 1);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(v(0b100).cross(v(0b010)), v(0b001));
        for bits in 0..8 {
            assert_eq!(v(bits).cross(v(bits)), FVec3::ZERO);
        }
        assert_eq!(v(0b111).cross(v(0b110)), v(0b110));
    }

    #[test]
    fn cross_is_perpendicular_to_factors() {
        for a in 0..8 {
            for b in 0..8 {
                let c = v(a).cross(v(b));
                assert_eq!(c.dot(v(a)), 0);
                assert_eq!(c.dot(v(b)), 0);
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        for x in VMatrix::unit_elements() {
            assert_eq!(VMatrix::IDENTITY * x, x);
            assert_eq!(x * VMatrix::IDENTITY, x);
        }
    }

    #[test]
    fn product_x0_x1_is_y0() {
        assert_eq!(x0() * x1(), y0());
    }

    #[test]
    fn involutions_square_to_identity() {
        assert_eq!(x0() * x0(), VMatrix::IDENTITY);
    }

    #[test]
    fn det_examples() {
        assert_eq!(VMatrix::IDENTITY.det(), 1);
        assert_eq!(x0().det(), 1);
        assert_eq!(VMatrix::new(1, FVec3::ZERO, FVec3::ZERO, 0).det(), 0);
    }

    #[test]
    fn det_is_multiplicative_on_units() {
        let units = VMatrix::unit_elements();
        for &x in &units {
            for &y in &units {
                assert_eq!((x * y).det(), 1);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(VMatrix::IDENTITY.inverse().unwrap(), VMatrix::IDENTITY);
        assert_eq!(
            y0().inverse().unwrap(),
            VMatrix::order3(v(0b011), v(0b110), 0).unwrap()
        );
        assert_eq!(x0().inverse().unwrap(), x0());
        let singular = VMatrix::new(1, FVec3::ZERO, FVec3::ZERO, 0);
        assert_eq!(singular.inverse(), Err(ZornError::Singular));
        assert_eq!(singular.order(), Err(ZornError::Singular));
    }

    #[test]
    fn inverse_is_two_sided() {
        for x in VMatrix::unit_elements() {
            let xi = x.inverse().unwrap();
            assert_eq!(x * xi, VMatrix::IDENTITY);
            assert_eq!(xi * x, VMatrix::IDENTITY);
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(VMatrix::IDENTITY.order().unwrap(), 1);
        assert_eq!(x0().order().unwrap(), 2);
        assert_eq!(y0().order().unwrap(), 3);
    }

    #[test]
    fn diagonal_order_criterion_matches_multiplication() {
        for x in VMatrix::unit_elements() {
            assert_eq!(x.order().unwrap(), order_by_mul(x), "order of {x}");
        }
    }

    #[test]
    fn unit_census() {
        let units = VMatrix::unit_elements();
        assert_eq!(units.len(), 120);
        let involutions = units.iter().filter(|x| x.order() == Ok(2)).count();
        let order3 = units.iter().filter(|x| x.order() == Ok(3)).count();
        assert_eq!(involutions, 63);
        assert_eq!(order3, 56);
    }

    #[test]
    fn diagonal_invariants() {
        for x in VMatrix::unit_elements() {
            match x.order().unwrap() {
                2 => {
                    assert_eq!(x.a(), x.b());
                    assert_eq!(x.a(), 1 ^ x.alpha().dot(x.beta()));
                }
                3 => assert_eq!(x.alpha().dot(x.beta()), 1),
                _ => {}
            }
        }
    }

    #[test]
    fn notation_round_trip() {
        for x in VMatrix::unit_elements() {
            assert_eq!(x.to_string().parse::<VMatrix>().unwrap(), x);
            assert_eq!(x.shorthand().parse::<VMatrix>().unwrap(), x);
        }
        assert_eq!("e".parse::<VMatrix>().unwrap(), VMatrix::IDENTITY);
        assert_eq!("inv(111,111)".parse::<VMatrix>().unwrap(), x0());
        assert_eq!("tri(011,110,1)".parse::<VMatrix>().unwrap(), y0());
    }

    #[test]
    fn notation_rejects_malformed_input() {
        assert!("inv(000,000)".parse::<VMatrix>().is_err());
        assert!("tri(000,001,1)".parse::<VMatrix>().is_err());
        assert!("[1|00|000|1]".parse::<VMatrix>().is_err());
        assert!("inv(111)".parse::<VMatrix>().is_err());
        assert!("garbage".parse::<VMatrix>().is_err());
    }
}
