//! Nash equilibria of finite normal forms: pure search for any number of
//! players, exact support enumeration for two.

use num_traits::{One, Zero};

use crate::efr::oracle_cap;
use crate::error::{Result, UgtError};
use crate::lp::{feasible, Cmp, Row};
use crate::num::Q;

/// A normal form with payoff vectors stored row-major over pure profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// Number of pure strategies per player.
    pub sizes: Vec<usize>,
    /// `payoffs[index(profile)][player]`.
    pub payoffs: Vec<Vec<Q>>,
}

impl NormalForm {
    /// Tabulates `f` over every pure profile.
    pub fn tabulate(sizes: Vec<usize>, mut f: impl FnMut(&[usize]) -> Vec<Q>) -> NormalForm {
        let total: usize = sizes.iter().product();
        let mut payoffs = Vec::with_capacity(total);
        let mut cur = vec![0; sizes.len()];
        for _ in 0..total {
            payoffs.push(f(&cur));
            for k in (0..sizes.len()).rev() {
                cur[k] += 1;
                if cur[k] < sizes[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
        NormalForm { sizes, payoffs }
    }

    /// Row-major index of a pure profile.
    pub fn index(&self, p: &[usize]) -> usize {
        p.iter().zip(&self.sizes).fold(0, |acc, (&x, &s)| acc * s + x)
    }

    /// Payoff vector of a pure profile.
    pub fn payoff(&self, p: &[usize]) -> &[Q] {
        &self.payoffs[self.index(p)]
    }

    /// True if no player gains by a unilateral pure deviation.
    pub fn is_pure_equilibrium(&self, p: &[usize]) -> bool {
        let mut q = p.to_vec();
        (0..self.sizes.len()).all(|k| {
            let base = self.payoff(p)[k].clone();
            let ok = (0..self.sizes[k]).all(|a| {
                q[k] = a;
                self.payoff(&q)[k] <= base
            });
            q[k] = p[k];
            ok
        })
    }

    /// Pure equilibria in lexicographic order.
    pub fn pure_equilibria(&self) -> Vec<Vec<usize>> {
        let n = self.sizes.len();
        let total: usize = self.sizes.iter().product();
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        for _ in 0..total {
            if self.is_pure_equilibrium(&cur) {
                out.push(cur.clone());
            }
            for k in (0..n).rev() {
                cur[k] += 1;
                if cur[k] < self.sizes[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
        out
    }

    /// Expected payoff vector of a mixed profile.
    pub fn expected(&self, sigma: &[Vec<Q>]) -> Vec<Q> {
        let n = self.sizes.len();
        let mut v = vec![Q::zero(); n];
        let mut cur = vec![0; n];
        for row in &self.payoffs {
            let w: Q = cur.iter().enumerate().map(|(k, &a)| sigma[k][a].clone()).product();
            if !w.is_zero() {
                for k in 0..n {
                    v[k] += &w * &row[k];
                }
            }
            for k in (0..n).rev() {
                cur[k] += 1;
                if cur[k] < self.sizes[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
        v
    }

    /// True if no pure deviation improves on the mixed profile.
    pub fn is_equilibrium(&self, sigma: &[Vec<Q>]) -> bool {
        let base = self.expected(sigma);
        (0..self.sizes.len()).all(|k| {
            (0..self.sizes[k]).all(|a| {
                let mut s = sigma.to_vec();
                s[k] = unit(self.sizes[k], a);
                self.expected(&s)[k] <= base[k]
            })
        })
    }
}

fn unit(n: usize, a: usize) -> Vec<Q> {
    (0..n).map(|x| if x == a { Q::one() } else { Q::zero() }).collect()
}

/// A Nash equilibrium: the first pure one if any, otherwise (two players)
/// the first found by support enumeration in order of total support size.
pub fn nash(nf: &NormalForm) -> Result<Vec<Vec<Q>>> {
    if nf.sizes.contains(&0) {
        return Err(UgtError::Invalid("a player has no strategy".into()));
    }
    if let Some(p) = nf.pure_equilibria().into_iter().next() {
        return Ok(p.iter().zip(&nf.sizes).map(|(&a, &s)| unit(s, a)).collect());
    }
    if nf.sizes.len() != 2 {
        return Err(UgtError::Unsupported(format!(
            "no pure equilibrium and mixed search needs exactly two players, got {}",
            nf.sizes.len()
        )));
    }
    support_enumeration(nf)
}

fn support_enumeration(nf: &NormalForm) -> Result<Vec<Vec<Q>>> {
    let (m, n) = (nf.sizes[0], nf.sizes[1]);
    let lo = nf.payoffs.iter().flatten().min().cloned().unwrap_or_else(Q::zero);
    let shift = Q::one() - lo;
    let a = |r: usize, c: usize| &nf.payoff(&[r, c])[0] + &shift;
    let b = |r: usize, c: usize| &nf.payoff(&[r, c])[1] + &shift;
    let cap = oracle_cap();
    let mut tried = 0usize;
    for k in 2..=m + n {
        for sa in 1..=m.min(k - 1) {
            let sb = k - sa;
            if sb > n {
                continue;
            }
            for s1 in subsets(m, sa) {
                for s2 in subsets(n, sb) {
                    tried += 1;
                    if tried > cap {
                        return Err(UgtError::Budget(format!("support enumeration exceeded {cap} candidates")));
                    }
                    // Variables: y over s2, x over s1, v1, v2.
                    let w = sb + sa + 2;
                    let mut rows: Vec<Row> = Vec::new();
                    let mut r = vec![Q::zero(); w];
                    r[..sb].fill(Q::one());
                    rows.push((r, Cmp::Eq, Q::one()));
                    let mut r = vec![Q::zero(); w];
                    r[sb..sb + sa].fill(Q::one());
                    rows.push((r, Cmp::Eq, Q::one()));
                    for i in 0..m {
                        let mut r = vec![Q::zero(); w];
                        for (k, &j) in s2.iter().enumerate() {
                            r[k] = a(i, j);
                        }
                        r[w - 2] = -Q::one();
                        let c = if s1.contains(&i) { Cmp::Eq } else { Cmp::Le };
                        rows.push((r, c, Q::zero()));
                    }
                    for j in 0..n {
                        let mut r = vec![Q::zero(); w];
                        for (k, &i) in s1.iter().enumerate() {
                            r[sb + k] = b(i, j);
                        }
                        r[w - 1] = -Q::one();
                        let c = if s2.contains(&j) { Cmp::Eq } else { Cmp::Le };
                        rows.push((r, c, Q::zero()));
                    }
                    if let Some(z) = feasible(&rows, w) {
                        let mut x = vec![Q::zero(); m];
                        let mut y = vec![Q::zero(); n];
                        for (k, &i) in s1.iter().enumerate() {
                            x[i] = z[sb + k].clone();
                        }
                        for (k, &j) in s2.iter().enumerate() {
                            y[j] = z[k].clone();
                        }
                        return Ok(vec![x, y]);
                    }
                }
            }
        }
    }
    Err(UgtError::Internal("support enumeration found no equilibrium".into()))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};
    use proptest::prelude::*;

    fn bimatrix(a: &[&[i64]], b: &[&[i64]]) -> NormalForm {
        NormalForm::tabulate(vec![a.len(), a[0].len()], |p| vec![q(a[p[0]][p[1]]), q(b[p[0]][p[1]])])
    }

    #[test]
    fn pennies_mix_evenly() {
        let nf = bimatrix(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]]);
        assert!(nf.pure_equilibria().is_empty());
        let s = nash(&nf).unwrap();
        assert_eq!(s, vec![vec![qr(1, 2), qr(1, 2)], vec![qr(1, 2), qr(1, 2)]]);
    }

    #[test]
    fn pure_found_first() {
        let nf = bimatrix(&[&[3, 0], &[0, 1]], &[&[1, 0], &[0, 3]]);
        assert_eq!(nf.pure_equilibria(), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(nash(&nf).unwrap(), vec![vec![q(1), q(0)], vec![q(1), q(0)]]);
    }

    #[test]
    fn rock_paper_scissors() {
        let a: &[&[i64]] = &[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]];
        let b: &[&[i64]] = &[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]];
        let s = nash(&bimatrix(a, b)).unwrap();
        assert_eq!(s[0], vec![qr(1, 3); 3]);
    }

    #[test]
    fn three_player_pure() {
        let nf = NormalForm::tabulate(vec![2, 2, 2], |p| {
            let agree = p[0] == p[1] && p[1] == p[2];
            vec![q(agree as i64); 3]
        });
        assert!(nf.is_equilibrium(&nash(&nf).unwrap()));
    }

    proptest! {
        #[test]
        fn bimatrix_equilibria_are_equilibria(
            m in 1usize..4, n in 1usize..4,
            vals in prop::collection::vec(-4i64..5, 18),
        ) {
            let nf = NormalForm::tabulate(vec![m, n], |p| {
                let k = p[0] * n + p[1];
                vec![q(vals[k]), q(vals[9 + k])]
            });
            let s = nash(&nf).unwrap();
            prop_assert!(nf.is_equilibrium(&s));
        }
    }
}
