//! The Block-type Lie superalgebras S(q) and their structural maps.
//!
//! S(q) has even generators `L(m,i)` (m integral, i a non-negative grade)
//! and odd generators `G(l,j)`. Odd indices are integral in the Ramond
//! sector (RB) and half-integral in the Neveu-Schwarz sector (NSB).
//! The bracket is
//!
//! ```text
//! [L(m,i), L(n,j)] = (n(i+q) - m(j+q)) * L(m+n, i+j)
//! [L(m,i), G(l,j)] = (l(i+q) - m(j+q/2)) * G(m+l, i+j)
//! [G(l,i), G(r,j)] = 2q * L(l+r, i+j)
//! ```
//!
//! Indices are stored doubled (`twice_index`) so half-integers stay in
//! integer arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::scalar::{rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    /// Ramond-Block: odd indices integral.
    RB,
    /// Neveu-Schwarz-Block: odd indices half-integral.
    NSB,
}

impl Sector {
    pub fn name(&self) -> &'static str {
        match self {
            Sector::RB => "RB",
            Sector::NSB => "NSB",
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Even keys order before odd keys; this ordering is also the canonical
/// term order used when rendering elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// One basis symbol `L(m,i)` (even) or `G(l,j)` (odd), with the mode index
/// stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisKey {
    parity: Parity,
    twice_index: i64,
    grade: u32,
}

impl BasisKey {
    /// Checked constructor: even keys must have an even doubled index.
    pub fn new(parity: Parity, twice_index: i64, grade: u32) -> Result<Self, AlgebraError> {
        if parity == Parity::Even && twice_index % 2 != 0 {
            return Err(AlgebraError::InvalidKey(format!(
                "even key requires an integral mode, got doubled index {twice_index}"
            )));
        }
        Ok(BasisKey {
            parity,
            twice_index,
            grade,
        })
    }

    /// The even generator `L(m,i)`.
    pub fn l(m: i64, i: u32) -> Self {
        BasisKey {
            parity: Parity::Even,
            twice_index: 2 * m,
            grade: i,
        }
    }

    /// The odd generator `G(l,j)` with `l = twice_l / 2`.
    pub fn g(twice_l: i64, j: u32) -> Self {
        BasisKey {
            parity: Parity::Odd,
            twice_index: twice_l,
            grade: j,
        }
    }

    /// Odd generator with an integral index (the RB shape).
    pub fn g_int(l: i64, j: u32) -> Self {
        BasisKey::g(2 * l, j)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn twice_index(&self) -> i64 {
        self.twice_index
    }

    pub fn grade(&self) -> u32 {
        self.grade
    }

    /// The mode index as an exact scalar (`twice_index / 2`).
    pub fn index(&self) -> Scalar {
        Scalar::from_rational(rat(self.twice_index, 2))
    }

    /// Sector membership: odd keys need integral indices in RB and
    /// half-integral indices in NSB.
    pub fn valid_in(&self, sector: Sector) -> bool {
        match self.parity {
            Parity::Even => true,
            Parity::Odd => match sector {
                Sector::RB => self.twice_index % 2 == 0,
                Sector::NSB => self.twice_index % 2 != 0,
            },
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.parity {
            Parity::Even => 'L',
            Parity::Odd => 'G',
        };
        if self.twice_index % 2 == 0 {
            write!(f, "{}({},{})", letter, self.twice_index / 2, self.grade)
        } else {
            write!(f, "{}({}/2,{})", letter, self.twice_index, self.grade)
        }
    }
}

impl fmt::Debug for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The defining parameters of S(q): the sector and the nonzero scalar q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureParams {
    sector: Sector,
    q: Scalar,
}

impl StructureParams {
    pub fn new(sector: Sector, q: Scalar) -> Result<Self, AlgebraError> {
        if q.is_zero() {
            return Err(AlgebraError::ZeroQ);
        }
        Ok(StructureParams { sector, q })
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }
}

/// A finite linear combination of basis keys of one sector.
///
/// The term map never stores zero coefficients; the empty map is the zero
/// element.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    sector: Sector,
    terms: BTreeMap<BasisKey, Scalar>,
}

impl AlgebraElement {
    pub fn zero(sector: Sector) -> Self {
        AlgebraElement {
            sector,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(sector: Sector, key: BasisKey, coeff: Scalar) -> Result<Self, AlgebraError> {
        let mut el = AlgebraElement::zero(sector);
        el.add_term(key, coeff)?;
        Ok(el)
    }

    /// Convenience constructor for a basis element with coefficient 1.
    pub fn basis(sector: Sector, key: BasisKey) -> Result<Self, AlgebraError> {
        AlgebraElement::from_term(sector, key, Scalar::one())
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Merges `coeff * key` into the element, dropping the term if the sum
    /// cancels. Errors when the key does not belong to the sector.
    pub fn add_term(&mut self, key: BasisKey, coeff: Scalar) -> Result<(), AlgebraError> {
        if !key.valid_in(self.sector) {
            return Err(AlgebraError::InvalidKey(format!(
                "{key} is not a basis key of the {} sector",
                self.sector
            )));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(key).or_insert_with(Scalar::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.sector);
        }
        AlgebraElement {
            sector: self.sector,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Parity of a homogeneous element; `None` for zero or mixed elements.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys();
        let first = it.next()?.parity();
        it.all(|k| k.parity() == first).then_some(first)
    }

    fn merge_scaled(&mut self, other: &AlgebraElement, c: &Scalar) {
        debug_assert_eq!(self.sector, other.sector);
        for (k, v) in &other.terms {
            let entry = self.terms.entry(*k).or_insert_with(Scalar::zero);
            *entry = &*entry + &(v * c);
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.sector, rhs.sector, "cannot add elements of different sectors");
        let mut out = self.clone();
        out.merge_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.sector, rhs.sector, "cannot subtract elements of different sectors");
        let mut out = self.clone();
        out.merge_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parser::format_element(self))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.sector, self)
    }
}

fn check_key_in(params: &StructureParams, key: &BasisKey) -> Result<(), AlgebraError> {
    if key.valid_in(params.sector()) {
        Ok(())
    } else {
        Err(AlgebraError::SectorMismatch(format!(
            "{key} is not a basis key of the {} sector",
            params.sector()
        )))
    }
}

/// `int_num/int_den + (q_num/q_den) * q`, built with componentwise rational
/// arithmetic (the hot path of every bracket).
fn linear_in_q(int_num: i64, int_den: i64, q_num: i64, q_den: i64, q: &Scalar) -> Scalar {
    let q_factor = rat(q_num, q_den);
    let mut scaled = q.mul_rational(&q_factor);
    if int_num != 0 {
        scaled = Scalar::new(rat(int_num, int_den) + scaled.rat_part(), scaled.surd_part().clone());
    }
    scaled
}

/// Structure constant and result key of the bracket of two basis keys, or
/// `None` when the bracket vanishes. Kept separate from [`bracket_basis`]
/// so hot loops can avoid building maps.
pub(crate) fn bracket_basis_term(
    params: &StructureParams,
    x: &BasisKey,
    y: &BasisKey,
) -> Option<(BasisKey, Scalar)> {
    let q = params.q();
    let (tx, ty) = (x.twice_index(), y.twice_index());
    let (gx, gy) = (x.grade() as i64, y.grade() as i64);
    let twice_sum = tx + ty;
    let grade_sum = x.grade() + y.grade();
    let (key, coeff) = match (x.parity(), y.parity()) {
        (Parity::Even, Parity::Even) => {
            // (n(i+q) - m(j+q)) = (ni - mj) + (n - m) q, with m = tx/2, n = ty/2.
            (
                BasisKey {
                    parity: Parity::Even,
                    twice_index: twice_sum,
                    grade: grade_sum,
                },
                linear_in_q(ty * gx - tx * gy, 2, ty - tx, 2, q),
            )
        }
        (Parity::Even, Parity::Odd) => {
            // (l(i+q) - m(j+q/2)) = (li - mj) + (l - m/2) q, with m = tx/2, l = ty/2.
            (
                BasisKey {
                    parity: Parity::Odd,
                    twice_index: twice_sum,
                    grade: grade_sum,
                },
                linear_in_q(ty * gx - tx * gy, 2, 2 * ty - tx, 4, q),
            )
        }
        (Parity::Odd, Parity::Even) => {
            // [G, L] = -[L, G] (the even-odd bracket is antisymmetric).
            let (key, coeff) = bracket_basis_term(params, y, x)?;
            (key, -coeff)
        }
        (Parity::Odd, Parity::Odd) => (
            BasisKey {
                parity: Parity::Even,
                twice_index: twice_sum,
                grade: grade_sum,
            },
            q.mul_rational(&rat(2, 1)),
        ),
    };
    if coeff.is_zero() {
        None
    } else {
        Some((key, coeff))
    }
}

/// Bracket of two basis keys; a single-term (or zero) element.
pub fn bracket_basis(
    params: &StructureParams,
    x: &BasisKey,
    y: &BasisKey,
) -> Result<AlgebraElement, AlgebraError> {
    check_key_in(params, x)?;
    check_key_in(params, y)?;
    let mut out = AlgebraElement::zero(params.sector());
    if let Some((key, coeff)) = bracket_basis_term(params, x, y) {
        out.terms.insert(key, coeff);
    }
    Ok(out)
}

/// Bilinear extension of the bracket to arbitrary elements.
pub fn bracket(
    params: &StructureParams,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    for el in [x, y] {
        if el.sector() != params.sector() {
            return Err(AlgebraError::SectorMismatch(format!(
                "element of sector {} passed to a {} bracket",
                el.sector(),
                params.sector()
            )));
        }
    }
    let mut out = AlgebraElement::zero(params.sector());
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            if let Some((key, coeff)) = bracket_basis_term(params, kx, ky) {
                let entry = out.terms.entry(key).or_insert_with(Scalar::zero);
                *entry = &*entry + &(&coeff * &(cx * cy));
                if entry.is_zero() {
                    out.terms.remove(&key);
                }
            }
        }
    }
    Ok(out)
}

/// The graded Jacobi cyclic sum
/// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]`,
/// which must vanish identically.
pub fn super_jacobi_defect(
    params: &StructureParams,
    x: &BasisKey,
    y: &BasisKey,
    z: &BasisKey,
) -> Result<AlgebraElement, AlgebraError> {
    for key in [x, y, z] {
        check_key_in(params, key)?;
    }
    let odd = |k: &BasisKey| k.parity() == Parity::Odd;
    let sign = |a: &BasisKey, b: &BasisKey| -> i64 {
        if odd(a) && odd(b) {
            -1
        } else {
            1
        }
    };
    // indices add under the bracket, so all three cyclic terms land on one
    // key; only the coefficients need accumulating
    let mut acc = Scalar::zero();
    let mut result_key = None;
    let mut accumulate = |outer: &BasisKey, inner_l: &BasisKey, inner_r: &BasisKey, s: i64| {
        if let Some((k_in, c_in)) = bracket_basis_term(params, inner_l, inner_r) {
            if let Some((k_out, c_out)) = bracket_basis_term(params, outer, &k_in) {
                debug_assert!(result_key.is_none_or(|k| k == k_out));
                result_key = Some(k_out);
                let c = &c_out * &c_in;
                acc = if s < 0 { &acc - &c } else { &acc + &c };
            }
        }
    };
    accumulate(x, y, z, sign(x, z));
    accumulate(y, z, x, sign(y, x));
    accumulate(z, x, y, sign(z, y));
    let mut out = AlgebraElement::zero(params.sector());
    if let Some(key) = result_key {
        if !acc.is_zero() {
            out.terms.insert(key, acc);
        }
    }
    Ok(out)
}

/// The sector-doubling embedding of the NSB sector into the RB sector:
/// `L(m,i) -> 1/2 L(2m,i)` and `G(r,j) -> 1/sqrt2 G(2r,j)`.
pub fn tau_embed(x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    if x.sector() != Sector::NSB {
        return Err(AlgebraError::SectorMismatch(
            "tau embeds the NSB sector into RB; argument must be NSB".into(),
        ));
    }
    let half = Scalar::from_ratio(1, 2);
    // 1/sqrt2 = sqrt2/2
    let inv_sqrt2 = Scalar::new(rat(0, 1), rat(1, 2));
    let mut out = AlgebraElement::zero(Sector::RB);
    for (key, coeff) in x.terms() {
        let (image, factor) = match key.parity() {
            Parity::Even => (BasisKey::new(Parity::Even, 2 * key.twice_index(), key.grade())?, &half),
            Parity::Odd => (BasisKey::new(Parity::Odd, 2 * key.twice_index(), key.grade())?, &inv_sqrt2),
        };
        out.add_term(image, coeff * factor)?;
    }
    Ok(out)
}

/// Image of a single basis key under the doubling embedding.
pub fn tau_embed_key(key: &BasisKey) -> Result<AlgebraElement, AlgebraError> {
    let el = AlgebraElement::basis(Sector::NSB, *key)?;
    tau_embed(&el)
}

/// Rescaled super-Virasoro generator `(1/q) * key`; only grade-0 keys span
/// the super-Virasoro subalgebra.
pub fn svir_rescale(
    sector: Sector,
    key: &BasisKey,
    q: &Scalar,
) -> Result<AlgebraElement, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroQ);
    }
    if key.grade() != 0 {
        return Err(AlgebraError::GradeNotZero(key.to_string()));
    }
    AlgebraElement::from_term(sector, *key, q.inv()?)
}

/// All basis keys of a sector with `|twice_index| <= 2*max_mode` and grade
/// at most `max_grade`, in a fixed deterministic order (even keys first).
pub fn window_keys(sector: Sector, max_mode: u32, max_grade: u32) -> Vec<BasisKey> {
    let bound = 2 * max_mode as i64;
    let mut keys = Vec::new();
    for t in (-bound..=bound).filter(|t| t % 2 == 0) {
        for g in 0..=max_grade {
            keys.push(BasisKey::l(t / 2, g));
        }
    }
    let odd_valid = |t: i64| match sector {
        Sector::RB => t % 2 == 0,
        Sector::NSB => t % 2 != 0,
    };
    for t in (-bound..=bound).filter(|&t| odd_valid(t)) {
        for g in 0..=max_grade {
            keys.push(BasisKey::g(t, g));
        }
    }
    keys
}

/// For an even target `L(m,i)` returns odd keys `(g1, g2)` and a factor `c`
/// with `c * [g1, g2] = target`, witnessing that the odd part generates the
/// even part.
pub fn odd_generates_even_witness(
    params: &StructureParams,
    target: &BasisKey,
) -> Result<(BasisKey, BasisKey, Scalar), AlgebraError> {
    if target.parity() != Parity::Even {
        return Err(AlgebraError::OddTarget(target.to_string()));
    }
    let c = (Scalar::from_int(2) * params.q()).inv()?;
    let (g1, g2) = match params.sector() {
        Sector::RB => (
            BasisKey::g(target.twice_index(), target.grade()),
            BasisKey::g(0, 0),
        ),
        Sector::NSB => (
            BasisKey::g(target.twice_index() - 1, target.grade()),
            BasisKey::g(1, 0),
        ),
    };
    Ok((g1, g2, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(sector: Sector, q: Scalar) -> StructureParams {
        StructureParams::new(sector, q).unwrap()
    }

    fn single(sector: Sector, key: BasisKey, coeff: Scalar) -> AlgebraElement {
        AlgebraElement::from_term(sector, key, coeff).unwrap()
    }

    #[test]
    fn even_even_bracket() {
        // q = 2: [L(1,0), L(2,0)] = (2*2 - 1*2) L(3,0) = 2 L(3,0)
        let p = params(Sector::RB, Scalar::from_int(2));
        let got = bracket_basis(&p, &BasisKey::l(1, 0), &BasisKey::l(2, 0)).unwrap();
        assert_eq!(got, single(Sector::RB, BasisKey::l(3, 0), Scalar::from_int(2)));
    }

    #[test]
    fn odd_odd_bracket() {
        // [G(0,0), G(0,0)] = 2q L(0,0) in RB for any q.
        for q in [Scalar::from_int(-1), Scalar::from_ratio(1, 2), Scalar::sqrt2()] {
            let p = params(Sector::RB, q.clone());
            let got = bracket_basis(&p, &BasisKey::g_int(0, 0), &BasisKey::g_int(0, 0)).unwrap();
            assert_eq!(
                got,
                single(Sector::RB, BasisKey::l(0, 0), Scalar::from_int(2) * &q)
            );
        }
    }

    #[test]
    fn vanishing_bracket() {
        let p = params(Sector::RB, Scalar::from_int(2));
        let got = bracket_basis(&p, &BasisKey::l(0, 0), &BasisKey::l(0, 0)).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn even_odd_bracket_with_half_integer_coefficient() {
        // q = -1, RB: [L(3,1), G(2,0)] = (2(1-1) - 3(0 - 1/2)) G(5,1) = 3/2 G(5,1)
        let p = params(Sector::RB, Scalar::from_int(-1));
        let got = bracket_basis(&p, &BasisKey::l(3, 1), &BasisKey::g_int(2, 0)).unwrap();
        assert_eq!(
            got,
            single(Sector::RB, BasisKey::g_int(5, 1), Scalar::from_ratio(3, 2))
        );
    }

    #[test]
    fn bilinear_bracket() {
        // q = 2, RB: [L(1,0) + G(0,0), G(0,0)] = -G(1,0) + 4 L(0,0)
        let p = params(Sector::RB, Scalar::from_int(2));
        let mut x = AlgebraElement::basis(Sector::RB, BasisKey::l(1, 0)).unwrap();
        x.add_term(BasisKey::g_int(0, 0), Scalar::one()).unwrap();
        let y = AlgebraElement::basis(Sector::RB, BasisKey::g_int(0, 0)).unwrap();
        let got = bracket(&p, &x, &y).unwrap();
        let mut expected = single(Sector::RB, BasisKey::g_int(1, 0), Scalar::from_int(-1));
        expected.add_term(BasisKey::l(0, 0), Scalar::from_int(4)).unwrap();
        assert_eq!(got, expected);

        let zero = AlgebraElement::zero(Sector::RB);
        assert!(bracket(&p, &zero, &y).unwrap().is_zero());

        // [x, x] = 2q L(2,0) for x = G(1,0)
        let g = AlgebraElement::basis(Sector::RB, BasisKey::g_int(1, 0)).unwrap();
        assert_eq!(
            bracket(&p, &g, &g).unwrap(),
            single(Sector::RB, BasisKey::l(2, 0), Scalar::from_int(4))
        );
    }

    #[test]
    fn sector_mismatch_is_an_error() {
        let p = params(Sector::RB, Scalar::from_int(2));
        let err = bracket_basis(&p, &BasisKey::g(1, 0), &BasisKey::l(0, 0)).unwrap_err();
        assert!(matches!(err, AlgebraError::SectorMismatch(_)));
        let nsb_el = AlgebraElement::basis(Sector::NSB, BasisKey::l(0, 0)).unwrap();
        let rb_el = AlgebraElement::basis(Sector::RB, BasisKey::l(0, 0)).unwrap();
        assert!(bracket(&p, &nsb_el, &rb_el).is_err());
    }

    #[test]
    fn jacobi_spot_triples() {
        let p = params(Sector::RB, Scalar::from_int(2));
        let d = super_jacobi_defect(&p, &BasisKey::l(1, 0), &BasisKey::l(2, 0), &BasisKey::l(3, 0))
            .unwrap();
        assert!(d.is_zero());

        let p = params(Sector::RB, Scalar::from_int(-1));
        let g = BasisKey::g_int(0, 0);
        assert!(super_jacobi_defect(&p, &g, &g, &g).unwrap().is_zero());

        // repeated even key
        let d = super_jacobi_defect(&p, &BasisKey::l(0, 0), &BasisKey::l(0, 0), &BasisKey::g_int(2, 1))
            .unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn jacobi_mixed_parity_window() {
        // a small exhaustive window over mixed parities and two q values
        for q in [Scalar::from_int(2), Scalar::from_ratio(-3, 5)] {
            for (sector, odd_twices) in [
                (Sector::RB, vec![-2i64, 0, 2]),
                (Sector::NSB, vec![-1i64, 1, 3]),
            ] {
                let p = params(sector, q.clone());
                let mut keys = Vec::new();
                for m in -1..=1 {
                    for i in 0..=1 {
                        keys.push(BasisKey::l(m, i));
                    }
                }
                for &t in &odd_twices {
                    for j in 0..=1 {
                        keys.push(BasisKey::g(t, j));
                    }
                }
                for x in &keys {
                    for y in &keys {
                        for z in &keys {
                            let d = super_jacobi_defect(&p, x, y, z).unwrap();
                            assert!(d.is_zero(), "jacobi defect at ({x}, {y}, {z}) q={q}: {d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn super_skew_symmetry_window() {
        let p = params(Sector::NSB, Scalar::from_ratio(1, 2));
        let mut keys = Vec::new();
        for m in -2..=2 {
            for i in 0..=2 {
                keys.push(BasisKey::l(m, i));
            }
        }
        for t in [-3i64, -1, 1, 3] {
            for j in 0..=2 {
                keys.push(BasisKey::g(t, j));
            }
        }
        for x in &keys {
            for y in &keys {
                let xy = bracket_basis(&p, x, y).unwrap();
                let yx = bracket_basis(&p, y, x).unwrap();
                let sign = if x.parity() == Parity::Odd && y.parity() == Parity::Odd {
                    Scalar::one()
                } else {
                    Scalar::from_int(-1)
                };
                assert_eq!(xy, yx.scale(&sign), "skew symmetry failed at ({x}, {y})");
            }
        }
    }

    #[test]
    fn tau_images() {
        let l = AlgebraElement::basis(Sector::NSB, BasisKey::l(1, 0)).unwrap();
        assert_eq!(
            tau_embed(&l).unwrap(),
            single(Sector::RB, BasisKey::l(2, 0), Scalar::from_ratio(1, 2))
        );
        let g = AlgebraElement::basis(Sector::NSB, BasisKey::g(1, 0)).unwrap();
        assert_eq!(
            tau_embed(&g).unwrap(),
            single(
                Sector::RB,
                BasisKey::g_int(1, 0),
                Scalar::new(rat(0, 1), rat(1, 2))
            )
        );
        // homomorphism spot value at q: tau([L(1,0), L(0,0)]) = -(q/2) L(2,0)
        let q = Scalar::from_ratio(-3, 5);
        let p_nsb = params(Sector::NSB, q.clone());
        let p_rb = params(Sector::RB, q.clone());
        let l0 = AlgebraElement::basis(Sector::NSB, BasisKey::l(0, 0)).unwrap();
        let lhs = tau_embed(&bracket(&p_nsb, &l, &l0).unwrap()).unwrap();
        let expected = single(
            Sector::RB,
            BasisKey::l(2, 0),
            -(&q * &Scalar::from_ratio(1, 2)),
        );
        assert_eq!(lhs, expected);
        let rhs = bracket(&p_rb, &tau_embed(&l).unwrap(), &tau_embed(&l0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_injective_on_window_keys() {
        let mut images = std::collections::BTreeSet::new();
        for m in -4..=4 {
            for i in 0..=3 {
                let el = tau_embed_key(&BasisKey::l(m, i)).unwrap();
                let key = *el.terms().next().unwrap().0;
                assert!(images.insert(key));
            }
        }
        for t in (-7..=7).step_by(2) {
            for j in 0..=3 {
                let el = tau_embed_key(&BasisKey::g(t, j)).unwrap();
                let key = *el.terms().next().unwrap().0;
                assert!(images.insert(key));
            }
        }
    }

    #[test]
    fn svir_rescale_examples() {
        let got = svir_rescale(Sector::RB, &BasisKey::l(3, 0), &Scalar::from_int(2)).unwrap();
        assert_eq!(got, single(Sector::RB, BasisKey::l(3, 0), Scalar::from_ratio(1, 2)));
        let got = svir_rescale(Sector::NSB, &BasisKey::g(-1, 0), &Scalar::from_int(-1)).unwrap();
        assert_eq!(got, single(Sector::NSB, BasisKey::g(-1, 0), Scalar::from_int(-1)));
        let err = svir_rescale(Sector::RB, &BasisKey::l(0, 1), &Scalar::from_int(2)).unwrap_err();
        assert!(matches!(err, AlgebraError::GradeNotZero(_)));
    }

    #[test]
    fn odd_generation_witness() {
        let q = Scalar::from_ratio(-3, 5);
        let half_inv_2q = (Scalar::from_int(2) * &q).inv().unwrap();

        let p = params(Sector::RB, q.clone());
        let (g1, g2, c) = odd_generates_even_witness(&p, &BasisKey::l(0, 0)).unwrap();
        assert_eq!((g1, g2), (BasisKey::g_int(0, 0), BasisKey::g_int(0, 0)));
        assert_eq!(c, half_inv_2q);

        let p = params(Sector::NSB, q.clone());
        let (g1, g2, _) = odd_generates_even_witness(&p, &BasisKey::l(0, 0)).unwrap();
        assert_eq!((g1, g2), (BasisKey::g(-1, 0), BasisKey::g(1, 0)));
        let (g1, g2, _) = odd_generates_even_witness(&p, &BasisKey::l(5, 3)).unwrap();
        assert_eq!((g1, g2), (BasisKey::g(9, 3), BasisKey::g(1, 0)));

        // witness identity c*[g1,g2] = target over a window, both sectors
        for sector in [Sector::RB, Sector::NSB] {
            let p = params(sector, q.clone());
            for m in -3..=3 {
                for i in 0..=2 {
                    let target = BasisKey::l(m, i);
                    let (g1, g2, c) = odd_generates_even_witness(&p, &target).unwrap();
                    let br = bracket_basis(&p, &g1, &g2).unwrap();
                    assert_eq!(
                        br.scale(&c),
                        AlgebraElement::basis(sector, target).unwrap()
                    );
                }
            }
        }

        let err = odd_generates_even_witness(&p, &BasisKey::g(1, 0)).unwrap_err();
        assert!(matches!(err, AlgebraError::OddTarget(_)));
    }
}
