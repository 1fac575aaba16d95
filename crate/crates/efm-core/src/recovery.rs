//! The inverse problem: from a minimal weight of an irreducible
//! Y-semisimple H_n(1, kappa2)-module satisfying the structural properties,
//! recover the GL_N data — the two rectangles (a^p) and (b^q), the highest
//! weight xi, N, and mu.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{EfmError, Result};
use crate::half::{HalfInt, Weight};
use crate::seminormal::{build_efm_module, SeminormalModule};
use crate::shapes::{EfmParameters, Partition};
use crate::tableaux::{reconstruct_tableau, weyl_act, Gen, StandardTableau};

/// Whether coordinate i (1-based) is fixed: there is an increasing index
/// sequence i = i_0 < i_1 < ... <= n with consecutive values differing by
/// one, ending at a coordinate equal to +-kappa2/2.
pub fn is_fixed(zeta: &Weight, i: usize, kappa2: i64) -> bool {
    let n = zeta.len();
    let target = kappa2.abs();
    // reachability over the index DAG, scanning right to left
    let mut reach = vec![false; n + 1];
    for j in (i..=n).rev() {
        let dj = zeta.coord(j).doubled();
        if dj.abs() == target {
            reach[j] = true;
            continue;
        }
        reach[j] = (j + 1..=n).any(|k| reach[k] && (dj - zeta.coord(k).doubled()).abs() == 2);
    }
    reach[i]
}

/// A minimal weight: every strictly positive coordinate is fixed.
pub fn is_minimal(zeta: &Weight, kappa2: i64) -> bool {
    (1..=zeta.len()).all(|i| !zeta.coord(i).is_positive() || is_fixed(zeta, i, kappa2))
}

/// Corners of a weight: coordinates with no later coordinate at distance
/// one. These are exactly the entries sitting at southeastern corners of
/// the associated tableau.
pub fn corners_of(zeta: &Weight) -> Vec<usize> {
    let n = zeta.len();
    (1..=n)
        .filter(|&i| {
            let di = zeta.coord(i).doubled();
            !(i + 1..=n).any(|k| (zeta.coord(k).doubled() - di).abs() == 2)
        })
        .collect()
}

fn basic_violation(zeta: &Weight, kappa2: i64) -> Option<String> {
    let n = zeta.len();
    if !zeta.parity_matches(kappa2) {
        return Some(format!(
            "parity: coordinates of {zeta} do not match kappa2 = {kappa2} mod 2"
        ));
    }
    for i in 1..n {
        if zeta.coord(i) == zeta.coord(i + 1) {
            return Some(format!("adjacent equal coordinates at {i}, {}", i + 1));
        }
    }
    if kappa2 != 0 && n >= 1 && zeta.coord(n).is_zero() {
        return Some("zeta_n = 0 with kappa2 nonzero".into());
    }
    // equal coordinates need both neighbors strictly between them
    for i in 1..=n {
        for j in i + 1..=n {
            if zeta.coord(i) == zeta.coord(j) {
                let up = (i + 1..j).any(|k| zeta.coord(k) == zeta.coord(i) + HalfInt::from_int(1));
                let down =
                    (i + 1..j).any(|k| zeta.coord(k) == zeta.coord(i) - HalfInt::from_int(1));
                if !up || !down {
                    return Some(format!(
                        "coordinates {i} and {j} repeat without both neighbors between"
                    ));
                }
            }
        }
    }
    // small coordinates must be fixed
    for i in 1..=n {
        if zeta.coord(i).doubled().abs() <= kappa2.abs() && !is_fixed(zeta, i, kappa2) {
            return Some(format!(
                "coordinate {i} = {} within the band is not fixed",
                zeta.coord(i)
            ));
        }
    }
    None
}

fn property3_violation(zeta: &Weight, kappa2: i64) -> Option<String> {
    let n = zeta.len();
    let h = kappa2.abs();
    let last_plus = (1..=n).rev().find(|&i| zeta.coord(i).doubled() == h);
    let last_minus = (1..=n).rev().find(|&i| zeta.coord(i).doubled() == -h);
    if let (Some(k), Some(r)) = (last_plus, last_minus) {
        if k != r {
            let corners = corners_of(zeta);
            if corners.contains(&k) && corners.contains(&r) {
                return Some(format!(
                    "both extreme coordinates {k} and {r} are corners"
                ));
            }
        }
    }
    None
}

/// Result of checking one weight against the structural properties.
#[derive(Clone, Debug, Serialize)]
pub struct WeightCheck {
    pub weight: Weight,
    pub violation: Option<String>,
}

/// Per-weight property report: parity, fixedness of small coordinates,
/// repeated-coordinate neighbors, no adjacent equal coordinates, nonzero
/// last coordinate, and (on minimal weights) the two-corner exclusion.
pub fn check_properties(weights: &[Weight], kappa2: i64) -> Vec<WeightCheck> {
    weights
        .iter()
        .map(|z| {
            let violation = basic_violation(z, kappa2).or_else(|| {
                if is_minimal(z, kappa2) {
                    property3_violation(z, kappa2)
                } else {
                    None
                }
            });
            WeightCheck {
                weight: z.clone(),
                violation,
            }
        })
        .collect()
}

/// Normalizes a weight to a minimal one: pushes every unfixed coordinate
/// above the band to the tail with adjacent transpositions (rightmost
/// first), then negates and reverses the tail. Returns the minimal weight
/// and the generator word mapping the input to it (first letter applied
/// first).
pub fn minimalize(zeta: &Weight, kappa2: i64) -> Result<(Weight, Vec<Gen>)> {
    if let Some(v) = basic_violation(zeta, kappa2) {
        return Err(EfmError::PropertyViolation(v));
    }
    let n = zeta.len();
    let offenders: Vec<usize> = (1..=n)
        .filter(|&i| zeta.coord(i).doubled() > kappa2.abs() && !is_fixed(zeta, i, kappa2))
        .collect();
    let l = offenders.len();
    let mut v = zeta.clone();
    let mut word = Vec::new();
    let push = |v: &mut Weight, word: &mut Vec<Gen>, g: Gen| {
        *v = weyl_act(&[g], v);
        word.push(g);
    };
    // push phase, right-to-left over the offenders
    for (idx, &r) in offenders.iter().enumerate().rev() {
        let target = n - (l - 1 - idx);
        for j in r..target {
            let gap = (v.coord(j) - v.coord(j + 1)).doubled().abs();
            if gap == 2 {
                return Err(EfmError::NotMinimalizable(format!(
                    "push of coordinate {j} blocked by a unit neighbor"
                )));
            }
            push(&mut v, &mut word, Gen::S(j));
        }
    }
    // tail phase: gamma, then descending transpositions, l times
    for j in (1..=l).rev() {
        if v.coord(n).doubled().abs() == kappa2.abs() {
            return Err(EfmError::NotMinimalizable(
                "tail negation blocked at an extreme coordinate".into(),
            ));
        }
        push(&mut v, &mut word, Gen::Gamma);
        for t in (n - j + 1..n).rev() {
            let gap = (v.coord(t) - v.coord(t + 1)).doubled().abs();
            if gap == 2 {
                return Err(EfmError::NotMinimalizable(
                    "tail exchange blocked by a unit neighbor".into(),
                ));
            }
            push(&mut v, &mut word, Gen::S(t));
        }
    }
    if !is_minimal(&v, kappa2) {
        return Err(EfmError::NotMinimalizable(format!(
            "normalization produced a non-minimal weight {v}"
        )));
    }
    debug_assert_eq!(weyl_act(&word, zeta), v);
    Ok((v, word))
}

/// Which recovery case applied.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum RecoveryCase {
    Case1,
    Case2,
    Case3a,
    Case3b,
    Case4a,
    Case4b,
    Case5,
}

/// Recovered GL_N data. `rect_a`/`rect_b` are the rectangles as printed by
/// the case formulas (always with rows(a) <= rows(b)); `functor` orients
/// them so that p - q - a + b equals the input kappa2, which fixes the sign
/// of mu = (a - b)/N.
#[derive(Clone, Debug, Serialize)]
pub struct RecoveredParams {
    pub case: RecoveryCase,
    pub n: usize,
    pub big_n: usize,
    /// (width a, rows p) of the first rectangle.
    pub rect_a: (usize, usize),
    /// (width b, rows q) of the second rectangle.
    pub rect_b: (usize, usize),
    pub xi: Partition,
    /// (a, p, b, q) oriented so p - q - a + b = kappa2.
    pub functor: (i64, i64, i64, i64),
    #[serde(serialize_with = "ser_rational")]
    pub mu: Rational64,
    pub kappa2: i64,
    pub s: HalfInt,
    pub nu: Partition,
    pub beta: Partition,
    pub tableau: StandardTableau,
    pub j1: Option<i64>,
    pub j2: Option<i64>,
}

impl RecoveredParams {
    /// The buildable parameter set (rectangles as printed, so p <= q).
    pub fn efm_parameters(&self) -> Result<EfmParameters> {
        EfmParameters::new(
            self.n,
            self.rect_a.1,
            self.rect_b.1,
            self.rect_a.0,
            self.rect_b.0,
            self.xi.clone(),
        )
    }
}

fn ser_rational<S: serde::Serializer>(
    x: &Rational64,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let s = if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    };
    serializer.serialize_str(&s)
}

fn halves_to_int(h: HalfInt, what: &str) -> Result<i64> {
    h.as_int().ok_or_else(|| {
        EfmError::CaseValidationFailed(format!("{what} = {h} is not an integer"))
    })
}

/// Recovers the GL_N data from a minimal weight.
pub fn recover(zeta: &Weight, kappa2: i64) -> Result<RecoveredParams> {
    let n = zeta.len();
    if n == 0 {
        return Err(EfmError::InvalidParameters("empty weight".into()));
    }
    if let Some(v) = basic_violation(zeta, kappa2) {
        return Err(EfmError::PropertyViolation(v));
    }
    if !is_minimal(zeta, kappa2) {
        return Err(EfmError::NotMinimal(format!(
            "{zeta} has an unfixed positive coordinate"
        )));
    }
    if let Some(v) = property3_violation(zeta, kappa2) {
        return Err(EfmError::PropertyViolation(v));
    }

    let (tableau, s) = reconstruct_tableau(zeta, kappa2)?;
    let shape = tableau.shape();
    let nu = shape.outer().clone();
    let beta = shape.inner().clone();
    let ell = nu.parts().len();
    let h = HalfInt::from_doubled(kappa2.abs());

    let corners = corners_of(zeta);
    // corner coordinates on a minimal weight sit at +-kappa2/2 or below the
    // band
    for &c in &corners {
        let d = zeta.coord(c).doubled();
        if !(d.abs() == kappa2.abs() || d < -kappa2.abs()) {
            return Err(EfmError::PropertyViolation(format!(
                "corner coordinate {c} = {} out of range for a minimal weight",
                zeta.coord(c)
            )));
        }
    }
    let mut by_row: Vec<(usize, usize)> = corners
        .iter()
        .map(|&c| (tableau.cell(c).row, c))
        .collect();
    by_row.sort();
    // one corner per row
    for w in by_row.windows(2) {
        assert_ne!(w[0].0, w[1].0, "two corners share a row");
    }
    let (r1_row, r1) = *by_row.last().unwrap();
    assert_eq!(r1_row, ell, "the deepest corner closes the last row");
    let r2 = by_row.len().checked_sub(2).map(|i| by_row[i].1);
    let z1 = zeta.coord(r1);

    let mut rect_a;
    let mut rect_b;
    let xi;
    let case;
    let j1_out: Option<i64>;
    let mut j2_out: Option<i64> = None;

    if z1 == h || z1 == -h {
        if let Some(r2) = r2 {
            let z2 = zeta.coord(r2);
            if z2.doubled() >= -kappa2.abs() {
                return Err(EfmError::PropertyViolation(format!(
                    "second corner value {z2} is not below the band"
                )));
            }
            case = if z1 == h {
                RecoveryCase::Case1
            } else {
                RecoveryCase::Case2
            };
            let (i1, j1) = {
                let c = tableau.cell(r1);
                (c.row as i64, c.col as i64)
            };
            let c2 = tableau.cell(r2);
            let i2 = c2.row as i64;
            if c2.col != nu.part(c2.row) {
                return Err(EfmError::CaseValidationFailed(
                    "second corner is not at the end of its row".into(),
                ));
            }
            let j2 = halves_to_int(
                HalfInt::from_int(i2) + s + if z1 == h { h } else { -h },
                "j2",
            )?;
            let nu1 = nu.part(1) as i64;
            if nu.part(i2 as usize) as i64 - j1 - j2 < 0 {
                return Err(EfmError::CaseValidationFailed(format!(
                    "nu_i2 - j1 - j2 = {} is negative",
                    nu.part(i2 as usize) as i64 - j1 - j2
                )));
            }
            if nu1 - j1 < 0 || nu1 - j2 < 0 {
                return Err(EfmError::CaseValidationFailed(
                    "rectangle width came out negative".into(),
                ));
            }
            rect_a = ((nu1 - j1) as usize, i2 as usize);
            rect_b = ((nu1 - j2) as usize, i1 as usize);
            let pad = (nu1 - j1 - j2) as usize;
            let mut parts: Vec<usize> = (1..=i1 as usize).map(|k| beta.part(k) + pad).collect();
            parts.extend((1..=i2 as usize).map(|k| nu1 as usize - nu.part(i2 as usize - k + 1)));
            xi = Partition::new(parts).map_err(|_| {
                EfmError::CaseValidationFailed("recovered xi is not a partition".into())
            })?;
            j1_out = Some(j1);
            j2_out = Some(j2);
        } else {
            // single corner: nu is a rectangle
            let j = halves_to_int(s + if z1 == h { h } else { -h }, "j")?;
            let nu1 = nu.part(1) as i64;
            if j >= 1 {
                case = if z1 == h {
                    RecoveryCase::Case3a
                } else {
                    RecoveryCase::Case4a
                };
                rect_a = (j as usize, 1);
                rect_b = (nu1 as usize, ell + 1);
                let mut parts = vec![(nu1 + j) as usize];
                parts.extend((1..=ell).map(|k| beta.part(k)));
                xi = Partition::new(parts).map_err(|_| {
                    EfmError::CaseValidationFailed("recovered xi is not a partition".into())
                })?;
            } else {
                case = if z1 == h {
                    RecoveryCase::Case3b
                } else {
                    RecoveryCase::Case4b
                };
                rect_a = (1, 1);
                rect_b = ((nu1 - j + 1) as usize, ell + 1);
                let mut parts = vec![(nu1 - j + 2) as usize];
                parts.extend((1..=ell).map(|k| (beta.part(k) as i64 - j + 1) as usize));
                xi = Partition::new(parts).map_err(|_| {
                    EfmError::CaseValidationFailed("recovered xi is not a partition".into())
                })?;
            }
            j1_out = Some(j);
        }
    } else if z1.doubled() < -kappa2.abs() {
        case = RecoveryCase::Case5;
        let nul = nu.part(ell) as i64;
        let nu1 = nu.part(1) as i64;
        let j1 = halves_to_int(HalfInt::from_int(nul) + h + z1, "j1")?;
        let j2 = halves_to_int(HalfInt::from_int(nul) - h + z1, "j2")?;
        if nul - j1 - j2 < 0 {
            return Err(EfmError::CaseValidationFailed(format!(
                "nu_l - j1 - j2 = {} is negative",
                nul - j1 - j2
            )));
        }
        if nu1 - j1 < 0 || nu1 - j2 < 0 {
            return Err(EfmError::CaseValidationFailed(
                "rectangle width came out negative".into(),
            ));
        }
        rect_a = ((nu1 - j1) as usize, ell);
        rect_b = ((nu1 - j2) as usize, ell);
        let pad = (nu1 - j1 - j2) as usize;
        let mut parts: Vec<usize> = (1..=ell).map(|k| beta.part(k) + pad).collect();
        parts.extend((1..=ell).map(|k| nu1 as usize - nu.part(ell - k + 1)));
        xi = Partition::new(parts).map_err(|_| {
            EfmError::CaseValidationFailed("recovered xi is not a partition".into())
        })?;
        j1_out = Some(j1);
        j2_out = Some(j2);
    } else {
        return Err(EfmError::PropertyViolation(format!(
            "deepest corner value {z1} exceeds the band on a minimal weight"
        )));
    }

    // the printed labels always satisfy rows(a) <= rows(b)
    if rect_a.1 > rect_b.1 {
        std::mem::swap(&mut rect_a, &mut rect_b);
    }
    let big_n = rect_a.1 + rect_b.1;
    let printed =
        rect_a.1 as i64 - rect_b.1 as i64 - rect_a.0 as i64 + rect_b.0 as i64;
    let functor = if printed == kappa2 {
        (
            rect_a.0 as i64,
            rect_a.1 as i64,
            rect_b.0 as i64,
            rect_b.1 as i64,
        )
    } else if -printed == kappa2 {
        (
            rect_b.0 as i64,
            rect_b.1 as i64,
            rect_a.0 as i64,
            rect_a.1 as i64,
        )
    } else {
        return Err(EfmError::CaseValidationFailed(format!(
            "rectangles give |p-q-a+b| = {}, expected |kappa2| = {}",
            printed.abs(),
            kappa2.abs()
        )));
    };
    let mu = Rational64::new(functor.0 - functor.2, big_n as i64);

    Ok(RecoveredParams {
        case,
        n,
        big_n,
        rect_a,
        rect_b,
        xi,
        functor,
        mu,
        kappa2,
        s,
        nu,
        beta,
        tableau,
        j1: j1_out,
        j2: j2_out,
    })
}

/// Rebuilds the module from the recovered parameters and checks that the
/// input weight reappears among its minimal weights and that the Hecke
/// parameter is reproduced up to the block-swap sign.
pub fn roundtrip_check(zeta: &Weight, kappa2: i64) -> Result<SeminormalModule> {
    let rec = recover(zeta, kappa2)?;
    let (fa, fp, fb, fq) = rec.functor;
    if fp - fq - fa + fb != kappa2 {
        return Err(EfmError::RoundTripFailed(
            "functor orientation does not reproduce kappa2".into(),
        ));
    }
    let params = rec.efm_parameters()?;
    let module = build_efm_module(&params)?;
    if module.params.kappa2.abs() != kappa2.abs() {
        return Err(EfmError::RoundTripFailed(format!(
            "rebuilt kappa2 = {}, expected +-{kappa2}",
            module.params.kappa2
        )));
    }
    if !module.weights.contains(zeta) {
        return Err(EfmError::RoundTripFailed(format!(
            "{zeta} is not a weight of the rebuilt module"
        )));
    }
    if !module.minimal_weights().contains(zeta) {
        return Err(EfmError::RoundTripFailed(format!(
            "{zeta} is not minimal in the rebuilt module"
        )));
    }
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn fixed_examples() {
        // chain through the +-kappa2/2 target
        let z = w(&[-3, -2, 1]);
        assert!(!is_fixed(&z, 1, -2));
        assert!(is_fixed(&z, 3, -2));
        // any coordinate already at +-kappa2/2
        assert!(is_fixed(&w(&[5, 1]), 2, -2));
        // example minimal weight: first coordinate reaches 1 via index 4
        let m = w(&[0, -1, -2, 1, -5, -6, -4]);
        assert!(is_fixed(&m, 1, -2));
        assert!(is_minimal(&m, -2));
    }

    #[test]
    fn corners_examples() {
        assert_eq!(corners_of(&w(&[0, -1, -2, 1, -5, -6, -4])), vec![3, 4, 6, 7]);
        assert_eq!(corners_of(&w(&[5])), vec![1]);
    }

    #[test]
    fn corners_match_tableau_corners() {
        let z = w(&[0, -1, -2, 1, -5, -6, -4]);
        let (t, _) = reconstruct_tableau(&z, -2).unwrap();
        let shape = t.shape();
        for i in 1..=z.len() {
            let is_corner = corners_of(&z).contains(&i);
            assert_eq!(shape.is_corner(t.cell(i)), is_corner, "entry {i}");
        }
    }

    #[test]
    fn property_checks() {
        // adjacent equal coordinates
        let checks = check_properties(&[w(&[2, 2, 1])], -2);
        assert!(checks[0].violation.is_some());
        // zeta_n = 0 with kappa2 nonzero
        let checks = check_properties(&[w(&[2, 1, 0])], -2);
        assert!(checks[0].violation.is_some());
        // a healthy minimal weight passes
        let checks = check_properties(&[w(&[0, -1, -2, 1, -5, -6, -4])], -2);
        assert!(checks[0].violation.is_none(), "{:?}", checks[0].violation);
    }

    #[test]
    fn negative_module_fails_property_one() {
        // weights of the dimension-7 module generated from [1,2,-3] with
        // kappa2 = -6; small coordinates are not fixed
        let weights: Vec<Weight> = [
            [-3, -2, -1],
            [-3, -2, 1],
            [-3, 1, -2],
            [-3, 1, 2],
            [1, -3, -2],
            [1, -3, 2],
            [1, 2, -3],
        ]
        .iter()
        .map(|v| w(v))
        .collect();
        let checks = check_properties(&weights, -6);
        assert!(checks.iter().any(|c| c.violation.is_some()));
        let first = checks[0].violation.as_ref().unwrap();
        assert!(first.contains("not fixed"), "{first}");
        // recover rejects them all
        for z in &weights {
            assert!(matches!(
                recover(z, -6),
                Err(EfmError::PropertyViolation(_)) | Err(EfmError::NotMinimal(_))
            ));
        }
    }

    #[test]
    fn minimalize_golden_examples() {
        let (res, word) = minimalize(&w(&[-2, 2, 4, 5, 6, -3, 1]), -2).unwrap();
        assert_eq!(res, w(&[-2, 2, -3, 1, -6, -5, -4]));
        assert_eq!(weyl_act(&word, &w(&[-2, 2, 4, 5, 6, -3, 1])), res);

        let (res, word) = minimalize(&w(&[0, 4, -1, 6, -2, 5, 1]), -2).unwrap();
        assert_eq!(res, w(&[0, -1, -2, 1, -5, -6, -4]));
        assert!(!word.is_empty());

        // already minimal: identity word
        let (res, word) = minimalize(&w(&[0, -1, -2, 1, -5, -6, -4]), -2).unwrap();
        assert_eq!(res, w(&[0, -1, -2, 1, -5, -6, -4]));
        assert!(word.is_empty());
    }

    #[test]
    fn recover_case1_example() {
        let rec = recover(&w(&[0, -1, -2, 1, -5, -6, -4]), -2).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case1);
        assert_eq!(rec.rect_a, (4, 3));
        assert_eq!(rec.rect_b, (3, 4));
        assert_eq!(rec.xi, Partition::from(vec![5, 5, 2, 2, 2, 1, 0]));
        assert_eq!(rec.big_n, 7);
        assert_eq!(rec.mu, Rational64::new(1, 7));
        assert_eq!(rec.s, HalfInt::from_int(-2));
    }

    #[test]
    fn recover_case2_example() {
        let rec = recover(&w(&[-1, 1, 0, -2, -1, -5, -3]), -2).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case2);
        assert_eq!(rec.rect_a, (2, 2));
        assert_eq!(rec.rect_b, (5, 3));
        assert_eq!(rec.xi, Partition::from(vec![6, 3, 2, 1, 0]));
        assert_eq!(rec.big_n, 5);
        assert_eq!(rec.mu, Rational64::new(3, 5));
    }

    #[test]
    fn recover_case3a_example() {
        let rec = recover(&w(&[-1, 2, 1, 0, 3, 2, 1]), -2).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case3a);
        assert_eq!(rec.rect_a, (2, 1));
        assert_eq!(rec.rect_b, (3, 4));
        assert_eq!(rec.xi, Partition::from(vec![5, 2, 0, 0, 0]));
        assert_eq!(rec.big_n, 5);
        assert_eq!(rec.mu, Rational64::new(-1, 5));
    }

    #[test]
    fn recover_case3b_example() {
        let rec = recover(&w(&[0, -2, -1, 1, 2, 0, 1]), -2).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case3b);
        assert_eq!(rec.rect_a, (1, 1));
        assert_eq!(rec.rect_b, (3, 5));
        assert_eq!(rec.xi, Partition::from(vec![4, 2, 1, 1, 1, 0]));
        assert_eq!(rec.big_n, 6);
        assert_eq!(rec.mu, Rational64::new(-1, 3));
    }

    #[test]
    fn recover_case4a_example() {
        let rec = recover(&w(&[4, 3, 2, -2, 1, 0, -1]), -2).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case4a);
        assert_eq!(rec.rect_a, (2, 1));
        assert_eq!(rec.rect_b, (6, 3));
        assert_eq!(rec.xi, Partition::from(vec![8, 5, 0, 0]));
        assert_eq!(rec.big_n, 4);
        assert_eq!(rec.mu, Rational64::from_integer(1));
    }

    #[test]
    fn recover_case4b_example() {
        let rec = recover(&w(&[0, -1, 2, 1, -2, 0, -1]), -2).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case4b);
        assert_eq!(rec.rect_a, (1, 1));
        assert_eq!(rec.rect_b, (5, 3));
        assert_eq!(rec.xi, Partition::from(vec![6, 2, 1, 0]));
        assert_eq!(rec.big_n, 4);
        assert_eq!(rec.mu, Rational64::from_integer(1));
    }

    #[test]
    fn recover_case5_example() {
        let rec = recover(&w(&[-2, -1, -5, -6, -3, -4, -2]), -2).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case5);
        assert_eq!(rec.rect_a, (3, 3));
        assert_eq!(rec.rect_b, (5, 3));
        assert_eq!(rec.xi, Partition::from(vec![6, 4, 4, 2, 1, 0]));
        assert_eq!(rec.big_n, 6);
        assert_eq!(rec.mu, Rational64::new(1, 3));
    }

    #[test]
    fn recover_halfint_example() {
        // Minimal weight shared by two parameter sets of H_3(1,-1)
        let z = Weight::from_doubled(vec![1, -5, -7]);
        let rec = recover(&z, -1).unwrap();
        assert_eq!(rec.case, RecoveryCase::Case1);
        assert_eq!(rec.rect_a, (3, 1));
        assert_eq!(rec.rect_b, (3, 2));
        assert_eq!(rec.xi, Partition::from(vec![4, 2, 0]));
        assert_eq!(rec.mu, Rational64::from_integer(0));
        let module = roundtrip_check(&z, -1).unwrap();
        assert_eq!(module.dim(), 12);

        // the recovered module is isomorphic to the one this weight came
        // from
        let original = build_efm_module(
            &EfmParameters::new(3, 1, 3, 2, 3, Partition::from(vec![3, 3, 2])).unwrap(),
        )
        .unwrap();
        assert!(original.weight_multiset().contains(&z));
        assert!(
            crate::seminormal::modules_isomorphic(&original, &module).unwrap()
        );
    }

    #[test]
    fn roundtrip_golden_examples() {
        for v in [
            vec![0, -1, -2, 1, -5, -6, -4],
            vec![-1, 1, 0, -2, -1, -5, -3],
            vec![-1, 2, 1, 0, 3, 2, 1],
            vec![0, -2, -1, 1, 2, 0, 1],
            vec![4, 3, 2, -2, 1, 0, -1],
            vec![0, -1, 2, 1, -2, 0, -1],
            vec![-2, -1, -5, -6, -3, -4, -2],
        ] {
            let z = w(&v);
            roundtrip_check(&z, -2).unwrap_or_else(|e| panic!("roundtrip {z} failed: {e}"));
        }
    }
}
