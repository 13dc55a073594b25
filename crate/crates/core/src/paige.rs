//! The 120-element nonassociative simple Moufang loop, built from the
//! unit-norm Zorn vector matrices over F2, together with its canonical
//! named elements and the involution relation table.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::loopcore::CayleyTable;
use crate::zorn::{FVec3, VMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PaigeError {
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("element {0} is not an involution")]
    NotInvolution(String),
    #[error("element {0} does not have order 3")]
    NotOrder3(String),
    #[error("expected two distinct involutions")]
    EqualElements,
}

/// Named elements fixed throughout: the canonical involution `x0`, the
/// canonical order-3 element `y0 = x0*x1`, and the auxiliary elements used
/// as orbit representatives and in the relation table.
pub const NAMED_ELEMENTS: [(&str, &str); 12] = [
    ("x0", "inv(111,111)"),
    ("x1", "inv(110,100)"),
    ("y0", "tri(011,110,1)"),
    ("z0", "tri(110,100,0)"),
    ("u0", "inv(000,110)"),
    ("u1", "inv(001,001)"),
    ("u2", "inv(100,010)"),
    ("u3", "inv(001,111)"),
    ("u4", "inv(110,110)"),
    ("u5", "inv(011,101)"),
    ("v0", "tri(010,110,0)"),
    ("v1", "tri(001,101,0)"),
];

/// The loop of 120 unit-determinant vector matrices under the Zorn
/// product. Element indices follow the canonical packed-byte order, so the
/// numbering is reproducible across runs and exports.
pub struct PaigeLoop {
    table: CayleyTable,
    elements: Vec<VMatrix>,
    byte_to_index: [u8; 256],
    names: HashMap<&'static str, usize>,
}

/// What two distinct involutions generate.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum InvolutionPair {
    E4,
    S3,
}

impl PaigeLoop {
    /// Builds the loop: exactly the 120 unit-determinant matrices,
    /// multiplied by the Zorn product.
    pub fn build() -> PaigeLoop {
        let elements = VMatrix::unit_elements();
        let n = elements.len();
        assert_eq!(n, 120);
        let mut byte_to_index = [u8::MAX; 256];
        for (i, x) in elements.iter().enumerate() {
            byte_to_index[x.byte() as usize] = i as u8;
        }
        let mut table = vec![0u16; n * n];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                let p = x * y;
                let idx = byte_to_index[p.byte() as usize];
                assert!(idx != u8::MAX, "unit-norm elements are closed under product");
                table[i * n + j] = idx as u16;
            }
        }
        let id = byte_to_index[VMatrix::IDENTITY.byte() as usize] as usize;
        let labels = elements.iter().map(|x| x.shorthand()).collect();
        let table = CayleyTable::new(n, id, table, None)
            .expect("the unit-norm loop is a quasigroup with identity")
            .with_labels(labels);
        let mut names = HashMap::new();
        for (name, notation) in NAMED_ELEMENTS {
            let m: VMatrix = notation.parse().expect("named element notation is valid");
            names.insert(name, byte_to_index[m.byte() as usize] as usize);
        }
        PaigeLoop {
            table,
            elements,
            byte_to_index,
            names,
        }
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn id(&self) -> usize {
        self.table.id()
    }

    pub fn element(&self, index: usize) -> VMatrix {
        self.elements[index]
    }

    pub fn index_of(&self, m: VMatrix) -> Option<usize> {
        let idx = self.byte_to_index[m.byte() as usize];
        (idx != u8::MAX).then_some(idx as usize)
    }

    /// Index of a named element from the fixed catalog.
    pub fn named(&self, name: &str) -> Result<usize, PaigeError> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| PaigeError::UnknownName(name.to_string()))
    }

    /// Parses either a catalog name or element notation into an index.
    pub fn element_index(&self, text: &str) -> Result<usize, PaigeError> {
        if let Ok(i) = self.named(text) {
            return Ok(i);
        }
        let m: VMatrix = text
            .parse()
            .map_err(|_| PaigeError::UnknownName(text.to_string()))?;
        self.index_of(m)
            .ok_or_else(|| PaigeError::UnknownName(text.to_string()))
    }

    pub fn order_of(&self, index: usize) -> usize {
        self.elements[index].order().expect("loop elements are units") as usize
    }

    /// Whether two distinct involutions generate a Klein four-group or a
    /// symmetric group, decided by the dot-product criterion
    /// `alpha.delta = beta.gamma`.
    pub fn involution_pair_type(
        &self,
        x: usize,
        y: usize,
    ) -> Result<InvolutionPair, PaigeError> {
        if x == y {
            return Err(PaigeError::EqualElements);
        }
        let (mx, my) = (self.elements[x], self.elements[y]);
        for m in [mx, my] {
            if m.order() != Ok(2) {
                return Err(PaigeError::NotInvolution(m.shorthand()));
            }
        }
        if mx.alpha().dot(my.beta()) == mx.beta().dot(my.alpha()) {
            Ok(InvolutionPair::E4)
        } else {
            Ok(InvolutionPair::S3)
        }
    }

    /// For `z` of order 3 and `x` an involution: whether `zx` is an
    /// involution, decided by `alpha.phi + beta.epsilon = n` where
    /// `(epsilon, phi)` are the vectors of `z` and `(alpha, beta, n)` the
    /// data of `x`.
    pub fn mixed_order_criterion(&self, z: usize, x: usize) -> Result<bool, PaigeError> {
        let (mz, mx) = (self.elements[z], self.elements[x]);
        if mz.order() != Ok(3) {
            return Err(PaigeError::NotOrder3(mz.shorthand()));
        }
        if mx.order() != Ok(2) {
            return Err(PaigeError::NotInvolution(mx.shorthand()));
        }
        let lhs = mx.alpha().dot(mz.beta()) ^ mx.beta().dot(mz.alpha());
        Ok(lhs == mx.a())
    }

    /// The relation table over all 63 involutions, see [`Table1`].
    pub fn table1(&self) -> Table1 {
        let x0 = self.names["x0"];
        let x1 = self.names["x1"];
        let y0 = self.names["y0"];
        let z0 = self.names["z0"];
        let u1 = self.names["u1"];
        let u2 = self.names["u2"];
        let z0_inv = self.table.right_inverse(z0);
        // v = z0^-1 x0 z0; the two bracketings agree by diassociativity.
        let v = self.table.mul(self.table.mul(z0_inv, x0), z0);
        assert_eq!(
            v,
            self.table.mul(z0_inv, self.table.mul(x0, z0)),
            "conjugation bracketings must agree"
        );
        let ord = |a: usize, b: usize| self.order_of(self.table.mul(a, b)) as u8;
        let mut rows = Vec::with_capacity(63);
        for alpha_bits in 0..8u8 {
            for beta_bits in 0..8u8 {
                if alpha_bits == 0 && beta_bits == 0 {
                    continue; // this slot is the neutral element
                }
                let alpha = FVec3::from_bits(alpha_bits);
                let beta = FVec3::from_bits(beta_bits);
                let m = VMatrix::involution(alpha, beta).expect("nonzero vectors");
                let x = self.index_of(m).expect("involutions are unit elements");
                let mut cells = [None; 6];
                if x != x0 {
                    let o1 = ord(x0, x);
                    cells[0] = Some(o1);
                    cells[3] = Some(ord(v, x));
                    if o1 == 2 {
                        let o2 = ord(x1, x);
                        cells[1] = Some(o2);
                        cells[4] = Some(ord(u1, x));
                        cells[5] = Some(ord(u2, x));
                        if o2 == 2 {
                            cells[2] = Some(ord(y0, x));
                        }
                    }
                }
                rows.push(Table1Row {
                    alpha,
                    beta,
                    cells,
                });
            }
        }
        Table1 { rows }
    }
}

/// One involution's row: the six order values, blank cells as `None`.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub alpha: FVec3,
    pub beta: FVec3,
    /// Orders of `x0*x`, `x1*x`, `y0*x`, `v*x`, `u1*x`, `u2*x` with
    /// `v = z0^-1 x0 z0`. The last five follow the blank-cell rules: the
    /// conjugate column is always filled, `x1/u1/u2` only when the `x0`
    /// entry is 2, and `y0` additionally only when the `x1` entry is 2.
    pub cells: [Option<u8>; 6],
}

/// The 63-row relation table of involutions against the fixed elements
/// `x0`, `x1`, `y0`, `z0^-1 x0 z0`, `u1`, `u2`. Rows are indexed by the
/// involution's vector pair `(alpha, beta)` in binary order; the cell for
/// the canonical involution itself is blank.
pub struct Table1 {
    pub rows: Vec<Table1Row>,
}

impl Table1 {
    /// Machine-readable form: one CSV row per involution, blank cells as
    /// empty fields.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,beta,x0x,x1x,y0x,vx,u1x,u2x\n");
        for row in &self.rows {
            let _ = write!(out, "{},{}", row.alpha, row.beta);
            for cell in row.cells {
                match cell {
                    Some(v) => {
                        let _ = write!(out, ",{v}");
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Human-readable 8x8 grid; each cell shows the first-row values over
    /// the second-row values.
    pub fn to_grid(&self) -> String {
        let cell_for = |alpha: u8, beta: u8| -> Option<&Table1Row> {
            self.rows
                .iter()
                .find(|r| r.alpha.bits() == alpha && r.beta.bits() == beta)
        };
        let fmt_half = |cells: &[Option<u8>]| -> String {
            cells
                .iter()
                .map(|c| c.map_or(".".to_string(), |v| v.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::from("a\\b   ");
        for beta in 0..8u8 {
            let _ = write!(out, "{:<7}", FVec3::from_bits(beta));
        }
        out.push('\n');
        for alpha in 0..8u8 {
            let mut line1 = format!("{}   ", FVec3::from_bits(alpha));
            let mut line2 = String::from("      ");
            for beta in 0..8u8 {
                match cell_for(alpha, beta) {
                    Some(row) => {
                        let _ = write!(line1, "{:<7}", fmt_half(&row.cells[..3]));
                        let _ = write!(line2, "{:<7}", fmt_half(&row.cells[3..]));
                    }
                    None => {
                        let _ = write!(line1, "{:<7}", "");
                        let _ = write!(line2, "{:<7}", "");
                    }
                }
            }
            out.push_str(line1.trim_end());
            out.push('\n');
            out.push_str(line2.trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loopcore::{classify, IsoType};
    use std::sync::LazyLock;

    static LOOP: LazyLock<PaigeLoop> = LazyLock::new(PaigeLoop::build);

    #[test]
    fn loop_basics() {
        let c = &*LOOP;
        assert_eq!(c.n(), 120);
        let involutions = (0..120).filter(|&i| c.order_of(i) == 2).count();
        let order3 = (0..120).filter(|&i| c.order_of(i) == 3).count();
        assert_eq!(involutions, 63);
        assert_eq!(order3, 56);
        assert!(c.table().is_moufang());
        assert!(!c.table().is_associative());
        assert!(c.table().is_diassociative());
    }

    #[test]
    fn named_elements_resolve() {
        let c = &*LOOP;
        let x0 = c.named("x0").unwrap();
        assert_eq!(c.element(x0).shorthand(), "inv(111,111)");
        let y0 = c.named("y0").unwrap();
        assert_eq!(c.element(y0).shorthand(), "tri(011,110,1)");
        let u2 = c.named("u2").unwrap();
        assert_eq!(c.element(u2).shorthand(), "inv(100,010)");
        assert!(c.named("w9").is_err());
        // y0 = x0 * x1
        let x1 = c.named("x1").unwrap();
        assert_eq!(c.table().mul(x0, x1), y0);
    }

    #[test]
    fn element_index_parses_notation() {
        let c = &*LOOP;
        assert_eq!(
            c.element_index("inv(111,111)").unwrap(),
            c.named("x0").unwrap()
        );
        assert_eq!(c.element_index("e").unwrap(), c.id());
        assert!(c.element_index("inv(000,000)").is_err());
    }

    #[test]
    fn involution_pair_examples() {
        let c = &*LOOP;
        let x0 = c.named("x0").unwrap();
        let x1 = c.named("x1").unwrap();
        let u1 = c.named("u1").unwrap();
        assert_eq!(
            c.involution_pair_type(x0, u1).unwrap(),
            InvolutionPair::E4
        );
        assert_eq!(
            c.involution_pair_type(x0, x1).unwrap(),
            InvolutionPair::S3
        );
        let a = c.element_index("inv(100,100)").unwrap();
        let b = c.element_index("inv(010,010)").unwrap();
        assert_eq!(c.involution_pair_type(a, b).unwrap(), InvolutionPair::E4);
        assert!(c.involution_pair_type(x0, x0).is_err());
        let y0 = c.named("y0").unwrap();
        assert!(c.involution_pair_type(x0, y0).is_err());
    }

    #[test]
    fn involution_pair_type_matches_closure_everywhere() {
        let c = &*LOOP;
        let invs: Vec<usize> = (0..120).filter(|&i| c.order_of(i) == 2).collect();
        for (k, &x) in invs.iter().enumerate() {
            for &y in &invs[k + 1..] {
                let sub = c.table().closure(&[x, y]);
                let expected = match classify(c.table(), &sub) {
                    IsoType::E4 => InvolutionPair::E4,
                    IsoType::S3 => InvolutionPair::S3,
                    other => panic!("two involutions generated {other}"),
                };
                assert_eq!(c.involution_pair_type(x, y).unwrap(), expected);
            }
        }
    }

    #[test]
    fn mixed_order_examples() {
        let c = &*LOOP;
        let x0 = c.named("x0").unwrap();
        let x1 = c.named("x1").unwrap();
        let y0 = c.named("y0").unwrap();
        let z0 = c.named("z0").unwrap();
        assert!(c.mixed_order_criterion(y0, x1).unwrap());
        assert!(!c.mixed_order_criterion(z0, x0).unwrap());
        assert!(c.mixed_order_criterion(y0, c.id()).is_err());
        assert!(c.mixed_order_criterion(x0, x1).is_err());
    }

    #[test]
    fn mixed_order_criterion_matches_multiplication() {
        let c = &*LOOP;
        for z in 0..120 {
            if c.order_of(z) != 3 {
                continue;
            }
            for x in 0..120 {
                if c.order_of(x) != 2 {
                    continue;
                }
                let direct = c.order_of(c.table().mul(z, x)) == 2;
                assert_eq!(c.mixed_order_criterion(z, x).unwrap(), direct);
            }
        }
    }

    #[test]
    fn order3_pairs_generate_an_involution() {
        let c = &*LOOP;
        let cubes: Vec<usize> = (0..120).filter(|&i| c.order_of(i) == 3).collect();
        for &x in &cubes {
            let span_x = c.table().closure(&[x]);
            for &y in &cubes {
                if y == x || span_x.contains(y) {
                    continue;
                }
                let sub = c.table().closure(&[x, y]);
                assert!(
                    sub.iter().any(|i| c.order_of(i) == 2),
                    "span of two independent order-3 elements misses an involution"
                );
            }
        }
    }

    #[test]
    fn closure_examples() {
        let c = &*LOOP;
        let x0 = c.named("x0").unwrap();
        let x1 = c.named("x1").unwrap();
        let z0 = c.named("z0").unwrap();
        let s3 = c.table().closure(&[x0, x1]);
        assert_eq!(s3.len(), 6);
        assert_eq!(classify(c.table(), &s3), IsoType::S3);
        let a4 = c.table().closure(&[x0, z0]);
        assert_eq!(a4.len(), 12);
        assert_eq!(classify(c.table(), &a4), IsoType::A4);
    }

    #[test]
    fn table1_matches_golden_fixture() {
        let csv = LOOP.table1().to_csv();
        assert_eq!(csv, include_str!("../fixtures/table1.csv"));
    }

    #[test]
    fn table1_spot_cells() {
        let t = LOOP.table1();
        let cell = |a: u8, b: u8| {
            t.rows
                .iter()
                .find(|r| r.alpha.bits() == a && r.beta.bits() == b)
                .unwrap()
                .cells
        };
        assert_eq!(
            cell(0b001, 0b001),
            [Some(2), Some(2), Some(3), Some(2), Some(1), Some(2)]
        );
        assert_eq!(cell(0b000, 0b001), [Some(3), None, None, Some(3), None, None]);
        assert_eq!(cell(0b111, 0b111), [None; 6]);
    }
}
