use crate::geom::Q;
use crate::labeled_graph::LabeledMultigraph;
use crate::parity::shortest_odd_cycle;
use crate::Error;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::ops::{Add, Div, Mul, Sub};

/// Arithmetic for the master LP.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LpArith {
    Rational,
    /// Floating point with the given feasibility tolerance.
    Float { tol: f64 },
}

impl Default for LpArith {
    fn default() -> Self {
        LpArith::Rational
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalSolution {
    pub x: Vec<Q>,
    pub objective: Q,
    /// Vertex sets of the odd cycles added as constraints.
    pub cuts: Vec<Vec<usize>>,
    pub iterations: usize,
    /// Weight of the lightest odd cycle under `x` at termination, if any cycle exists.
    pub min_cycle_weight: Option<Q>,
}

pub const DEFAULT_ITERATION_LIMIT: usize = 2000;

trait Num:
    Clone + PartialOrd + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn positive(&self) -> bool;
    fn negative(&self) -> bool;
}

impl Num for Q {
    fn positive(&self) -> bool {
        self.is_positive()
    }
    fn negative(&self) -> bool {
        self.is_negative()
    }
}

const FEPS: f64 = 1e-12;

impl Num for f64 {
    fn positive(&self) -> bool {
        *self > FEPS
    }
    fn negative(&self) -> bool {
        *self < -FEPS
    }
}

/// Solves max Σ y_C s.t. Σ_{C ∋ v} y_C ≤ 1, y ≥ 0 by a dense tableau simplex
/// with Bland's rule. Returns the primal x (duals of the vertex rows) and
/// the optimum.
fn solve_dual<T: Num>(n: usize, cuts: &[Vec<usize>]) -> (Vec<T>, T) {
    let m = cuts.len();
    let cols = m + n;
    // rows: a[i][0..cols] | rhs
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|v| {
            let mut row = vec![T::zero(); cols + 1];
            for (c, cut) in cuts.iter().enumerate() {
                if cut.contains(&v) {
                    row[c] = T::one();
                }
            }
            row[m + v] = T::one();
            row[cols] = T::one();
            row
        })
        .collect();
    let mut obj = vec![T::zero(); cols + 1];
    for o in obj.iter_mut().take(m) {
        *o = T::zero() - T::one();
    }
    let mut basis: Vec<usize> = (0..n).map(|v| m + v).collect();
    loop {
        let Some(j) = (0..cols).find(|&j| obj[j].negative()) else { break };
        let mut pick: Option<(usize, T)> = None;
        for i in 0..n {
            if a[i][j].positive() {
                let ratio = a[i][cols].clone() / a[i][j].clone();
                let better = match &pick {
                    None => true,
                    Some((pi, pr)) => ratio < *pr || (ratio == *pr && basis[i] < basis[*pi]),
                };
                if better {
                    pick = Some((i, ratio));
                }
            }
        }
        // bounded: every y column has a positive entry in some row
        let (r, _) = pick.expect("dual LP is bounded");
        let pv = a[r][j].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() / pv.clone();
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[j].is_zero() {
                let f = row[j].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        if !obj[j].is_zero() {
            let f = obj[j].clone();
            for (x, p) in obj.iter_mut().zip(&prow) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        basis[r] = j;
    }
    let x = (0..n).map(|v| obj[m + v].clone()).collect();
    (x, obj[cols].clone())
}

fn lightest_odd_cycle_q(g: &LabeledMultigraph, x: &[Q]) -> Option<(Vec<usize>, Q)> {
    shortest_odd_cycle(g, x).map(|(c, w)| (c.vertices, w))
}

fn lightest_odd_cycle_f(g: &LabeledMultigraph, x: &[f64]) -> Option<(Vec<usize>, f64)> {
    shortest_odd_cycle(g, x).map(|(c, w)| (c.vertices, w))
}

fn vertex_set(mut vs: Vec<usize>) -> Vec<usize> {
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Hit-odd-cycles LP (bit 0 of `g`) by cutting planes: solve the master LP
/// over the current cycle constraints, ask for the lightest odd cycle under
/// the current x, add it if it weighs less than 1 − tol, repeat.
pub fn lp_hit_odd_cycles(g: &LabeledMultigraph, arith: LpArith, limit: usize) -> Result<FractionalSolution, Error> {
    let n = g.n;
    let mut cuts: Vec<Vec<usize>> = Vec::new();
    let mut best = String::from("none");
    for it in 0..limit {
        match arith {
            LpArith::Rational => {
                let (x, obj): (Vec<Q>, Q) = solve_dual(n, &cuts);
                let x: Vec<Q> = x.into_iter().map(|v| if v > Q::one() { Q::one() } else { v }).collect();
                best = crate::geom::fmt_q(&obj);
                match lightest_odd_cycle_q(g, &x) {
                    Some((c, w)) if w < Q::one() => {
                        log::trace!("lp iteration {it}: objective {best}, cut {c:?} of weight {w}");
                        cuts.push(vertex_set(c));
                    }
                    found => {
                        let min_cycle_weight = found.map(|(_, w)| w);
                        return Ok(FractionalSolution { x, objective: obj, cuts, iterations: it + 1, min_cycle_weight });
                    }
                }
            }
            LpArith::Float { tol } => {
                let (x, obj): (Vec<f64>, f64) = solve_dual(n, &cuts);
                let x: Vec<f64> = x.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
                best = format!("{obj}");
                match lightest_odd_cycle_f(g, &x) {
                    Some((c, w)) if w < 1.0 - tol => {
                        let set = vertex_set(c);
                        if cuts.contains(&set) {
                            // numerical stall: the same cut keeps coming back
                            return Err(Error::IterationLimit { limit: it, best });
                        }
                        cuts.push(set);
                    }
                    found => {
                        let to_q = |v: f64| Q::from_f64(v).unwrap_or_else(Q::zero);
                        return Ok(FractionalSolution {
                            x: x.iter().map(|&v| to_q(v)).collect(),
                            objective: to_q(obj),
                            cuts,
                            iterations: it + 1,
                            min_cycle_weight: found.map(|(_, w)| to_q(w)),
                        });
                    }
                }
            }
        }
    }
    Err(Error::IterationLimit { limit, best })
}

/// The objective as f64, for reporting.
pub fn objective_f64(sol: &FractionalSolution) -> f64 {
    sol.objective.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::q;
    use crate::labeled_graph::{Label, Mode};

    fn g1(n: usize, es: &[(usize, usize, u64)]) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new(n, Mode::St);
        for &(u, v, b) in es {
            g.add_edge(u, v, Label::new(1, b));
        }
        g
    }

    #[test]
    fn odd_triangle_objective_one() {
        let tri = g1(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        let sol = lp_hit_odd_cycles(&tri, LpArith::Rational, 100).unwrap();
        // (1/3, 1/3, 1/3) is optimal too; the simplex returns some optimal vertex
        assert_eq!(sol.objective, q(1));
        assert_eq!(sol.x.iter().fold(q(0), |a, b| a + b), q(1));
        assert!(sol.min_cycle_weight.unwrap() >= q(1));
        let f = lp_hit_odd_cycles(&tri, LpArith::Float { tol: 1e-9 }, 100).unwrap();
        assert!((objective_f64(&f) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn no_odd_cycle_zero() {
        let sol = lp_hit_odd_cycles(&g1(3, &[(0, 1, 0), (1, 2, 0)]), LpArith::Rational, 10).unwrap();
        assert_eq!(sol.objective, q(0));
        assert!(sol.x.iter().all(|v| v.is_zero()));
        assert_eq!(sol.min_cycle_weight, None);
    }

    #[test]
    fn self_loop_forces_one() {
        let sol = lp_hit_odd_cycles(&g1(2, &[(1, 1, 1)]), LpArith::Rational, 10).unwrap();
        assert_eq!(sol.x, vec![q(0), q(1)]);
    }

    #[test]
    fn iteration_limit_reported() {
        let tri = g1(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert!(matches!(lp_hit_odd_cycles(&tri, LpArith::Rational, 1), Err(Error::IterationLimit { .. })));
    }
}
