//! Brute-force symmetric function oracle: Schur polynomials from
//! semistandard tableaux, the e_1 Pieri rule, Schur expansion of products by
//! leading-term elimination, and the invariant-space dimension count.

use std::collections::BTreeMap;

use crate::error::{EfmError, Result};
use crate::shapes::{admissible_outer_shapes, EfmParameters, Partition, SkewShape};
use crate::tableaux::syt_count;

/// An integer polynomial in N variables, keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyInNVars {
    pub n_vars: usize,
    pub terms: BTreeMap<Vec<u32>, i64>,
}

impl PolyInNVars {
    pub fn zero(n_vars: usize) -> Self {
        PolyInNVars {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, expo: Vec<u32>, coeff: i64) {
        assert_eq!(expo.len(), self.n_vars);
        let e = self.terms.entry(expo.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&expo);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &PolyInNVars) -> PolyInNVars {
        assert_eq!(self.n_vars, other.n_vars);
        let mut terms: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let e = terms.entry(expo).or_insert(0);
                *e += ca * cb;
            }
        }
        terms.retain(|_, v| *v != 0);
        PolyInNVars {
            n_vars: self.n_vars,
            terms,
        }
    }

    pub fn sub_scaled(&mut self, other: &PolyInNVars, factor: i64) {
        for (e, c) in &other.terms {
            let v = self.terms.entry(e.clone()).or_insert(0);
            *v -= factor * c;
        }
        self.terms.retain(|_, v| *v != 0);
    }

    /// Value at x_1 = ... = x_N = 1; for a Schur polynomial this is the
    /// GL_N dimension.
    pub fn eval_ones(&self) -> i64 {
        self.terms.values().sum()
    }

    /// The lexicographically largest exponent vector.
    pub fn leading_exponent(&self) -> Option<&Vec<u32>> {
        self.terms.keys().next_back()
    }
}

fn expo_of_ssyt(filling: &[u32], n_vars: usize) -> Vec<u32> {
    let mut e = vec![0u32; n_vars];
    for &v in filling {
        e[(v - 1) as usize] += 1;
    }
    e
}

/// The Schur polynomial s_lambda(x_1..x_N): sum over semistandard tableaux
/// of shape lambda with entries at most N.
pub fn schur_poly(lambda: &Partition, n_vars: usize) -> Result<PolyInNVars> {
    if lambda.length() > n_vars {
        return Err(EfmError::TooManyRows(lambda.length(), n_vars));
    }
    let rows: Vec<usize> = lambda.trimmed().to_vec();
    let mut poly = PolyInNVars::zero(n_vars);
    if rows.is_empty() {
        poly.terms.insert(vec![0; n_vars], 1);
        return Ok(poly);
    }
    // cells row-major; values weakly increase along rows, strictly down columns
    let mut filling: Vec<Vec<u32>> = rows.iter().map(|&len| vec![0; len]).collect();
    fn rec(
        rows: &[usize],
        filling: &mut Vec<Vec<u32>>,
        i: usize,
        j: usize,
        n_vars: usize,
        poly: &mut PolyInNVars,
    ) {
        if i == rows.len() {
            let flat: Vec<u32> = filling.iter().flatten().copied().collect();
            let expo = expo_of_ssyt(&flat, n_vars);
            *poly.terms.entry(expo).or_insert(0) += 1;
            return;
        }
        let (ni, nj) = if j + 1 < rows[i] {
            (i, j + 1)
        } else {
            (i + 1, 0)
        };
        let min_row = if j > 0 { filling[i][j - 1] } else { 1 };
        let min_col = if i > 0 && j < rows[i - 1] {
            filling[i - 1][j] + 1
        } else {
            1
        };
        for v in min_row.max(min_col)..=n_vars as u32 {
            filling[i][j] = v;
            rec(rows, filling, ni, nj, n_vars, poly);
        }
        filling[i][j] = 0;
    }
    rec(&rows, &mut filling, 0, 0, n_vars, &mut poly);
    Ok(poly)
}

/// Partitions obtained from lambda by adding one cell, with at most N rows.
pub fn pieri_e1(lambda: &Partition, n_vars: usize) -> Vec<Partition> {
    let parts = lambda.trimmed();
    let mut out = Vec::new();
    for i in 0..=parts.len() {
        if i >= n_vars {
            break;
        }
        let here = if i < parts.len() { parts[i] } else { 0 };
        let above = if i == 0 { usize::MAX } else { parts[i - 1] };
        if here < above {
            let mut nu = parts.to_vec();
            if i < nu.len() {
                nu[i] += 1;
            } else {
                nu.push(1);
            }
            out.push(Partition::new(nu).unwrap());
        }
    }
    out
}

/// Expands s_lambda * s_mu in the Schur basis by repeatedly subtracting the
/// lexicographically leading Schur term. Needs enough variables to tell the
/// relevant partitions apart.
pub fn lr_product_brute(
    lambda: &Partition,
    mu: &Partition,
    n_vars: usize,
) -> Result<BTreeMap<Partition, i64>> {
    if lambda.length() + mu.length() > n_vars {
        return Err(EfmError::InsufficientVariables {
            needed: lambda.length() + mu.length(),
            got: n_vars,
        });
    }
    let mut rest = schur_poly(lambda, n_vars)?.mul(&schur_poly(mu, n_vars)?);
    let mut out = BTreeMap::new();
    while let Some(lead) = rest.leading_exponent().cloned() {
        let parts: Vec<usize> = lead
            .iter()
            .map(|&x| x as usize)
            .take_while(|&x| x > 0)
            .collect();
        // the leading exponent of a symmetric polynomial is a partition
        let nu = Partition::new(parts).expect("leading exponent must decrease");
        let coeff = rest.terms[&lead];
        rest.sub_scaled(&schur_poly(&nu, n_vars)?, coeff);
        let prev = out.insert(nu, coeff);
        assert!(prev.is_none(), "leading terms strictly decrease");
    }
    Ok(out)
}

/// The dimension of the invariant space: the number of standard tableaux of
/// shape nu/xi summed over the admissible outer shapes.
pub fn dim_invariant_space(params: &EfmParameters) -> Result<usize> {
    let mut total = 0;
    for nu in admissible_outer_shapes(params)? {
        let shape = SkewShape::new(nu, params.xi.clone())?;
        total += syt_count(&shape);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::okada_expand;

    #[test]
    fn schur_small() {
        let p = schur_poly(&Partition::from(vec![1]), 2).unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.eval_ones(), 2);

        let p21 = schur_poly(&Partition::from(vec![2, 1]), 3).unwrap();
        assert_eq!(p21.eval_ones(), 8);

        let p22 = schur_poly(&Partition::from(vec![2, 2]), 2).unwrap();
        assert_eq!(p22.terms.len(), 1);
        assert_eq!(p22.terms[&vec![2u32, 2]], 1);

        assert!(schur_poly(&Partition::from(vec![1, 1, 1]), 2).is_err());
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(
            pieri_e1(&Partition::from(vec![2, 1]), 3),
            vec![
                Partition::from(vec![3, 1]),
                Partition::from(vec![2, 2]),
                Partition::from(vec![2, 1, 1]),
            ]
        );
        assert_eq!(pieri_e1(&Partition::empty(), 3), vec![Partition::from(vec![1])]);
        assert_eq!(
            pieri_e1(&Partition::from(vec![2, 2]), 2),
            vec![Partition::from(vec![3, 2])]
        );
    }

    fn partitions_up_to(total: usize, max_len: usize) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(parts) = stack.pop() {
            let used: usize = parts.iter().sum();
            let upper = parts.last().copied().unwrap_or(total);
            if parts.len() == max_len {
                continue;
            }
            for v in 1..=upper.min(total - used) {
                let mut next = parts.clone();
                next.push(v);
                out.push(Partition::new(next.clone()).unwrap());
                stack.push(next);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn pieri_matches_multiplication() {
        // s_lambda * e_1 = sum of s_nu over pieri_e1(lambda), for every
        // lambda of size at most 5 in at most 4 variables
        let n_vars = 4;
        let e1 = schur_poly(&Partition::from(vec![1]), n_vars).unwrap();
        for lambda in partitions_up_to(5, n_vars) {
            let lhs = schur_poly(&lambda, n_vars).unwrap().mul(&e1);
            let mut rhs = PolyInNVars::zero(n_vars);
            for nu in pieri_e1(&lambda, n_vars) {
                let p = schur_poly(&nu, n_vars).unwrap();
                rhs.sub_scaled(&p, -1);
            }
            assert_eq!(lhs, rhs, "pieri mismatch for {lambda}");
        }
    }

    #[test]
    fn lr_examples() {
        let out = lr_product_brute(&Partition::from(vec![2]), &Partition::from(vec![2, 2]), 4)
            .unwrap();
        let expect: BTreeMap<Partition, i64> = [
            (Partition::from(vec![2, 2, 2]), 1),
            (Partition::from(vec![3, 2, 1]), 1),
            (Partition::from(vec![4, 2]), 1),
        ]
        .into();
        assert_eq!(out, expect);

        let triv = lr_product_brute(&Partition::empty(), &Partition::from(vec![3, 1]), 4).unwrap();
        assert_eq!(triv, [(Partition::from(vec![3, 1]), 1)].into());

        assert!(matches!(
            lr_product_brute(&Partition::from(vec![1, 1]), &Partition::from(vec![1, 1, 1]), 4),
            Err(EfmError::InsufficientVariables { .. })
        ));
    }

    #[test]
    fn okada_matches_lr_on_small_rectangles() {
        // quick slice here; the full sweep lives in the acceptance suite
        for (a, p, b, q) in [(1, 1, 1, 2), (2, 1, 2, 2), (0, 1, 3, 2), (2, 2, 1, 2)] {
            let rect_a = Partition::new(vec![a; p]).unwrap();
            let rect_b = Partition::new(vec![b; q]).unwrap();
            let lr = lr_product_brute(&rect_a, &rect_b, p + q).unwrap();
            let nus = okada_expand(a, p, b, q).unwrap();
            assert_eq!(lr.len(), nus.len());
            for nu in nus {
                assert_eq!(lr.get(&nu), Some(&1), "missing {nu} for {a},{p},{b},{q}");
            }
        }
    }

    #[test]
    fn dimension_examples() {
        let params =
            EfmParameters::new(3, 1, 2, 2, 2, Partition::new(vec![2, 1, 0]).unwrap()).unwrap();
        assert_eq!(dim_invariant_space(&params).unwrap(), 11);

        let p0 =
            EfmParameters::new(0, 1, 2, 2, 2, Partition::new(vec![4, 2, 0]).unwrap()).unwrap();
        assert_eq!(dim_invariant_space(&p0).unwrap(), 1);

        // xi = (3,3,2), N = 4, p = 1, a = 2, b = 3: the three admissible
        // outer shapes and the SYT sum
        let p1 = EfmParameters::new(3, 1, 3, 2, 3, Partition::new(vec![3, 3, 2]).unwrap())
            .unwrap();
        let admissible = admissible_outer_shapes(&p1).unwrap();
        assert_eq!(
            admissible,
            vec![
                Partition::from(vec![3, 3, 3, 2]),
                Partition::from(vec![4, 3, 3, 1]),
                Partition::from(vec![5, 3, 3, 0]),
            ]
        );
        let total: usize = admissible
            .iter()
            .map(|nu| syt_count(&SkewShape::new(nu.clone(), p1.xi.clone()).unwrap()))
            .sum();
        assert_eq!(total, 12);
        assert_eq!(dim_invariant_space(&p1).unwrap(), 12);
        assert_eq!(crate::tableaux::tab_family(&p1).unwrap().len(), 12);
    }
}
