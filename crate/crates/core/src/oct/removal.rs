use super::exact::oct_exact;
use super::lp::{lp_hit_odd_cycles, FractionalSolution, LpArith, DEFAULT_ITERATION_LIMIT};
use super::round::hit_odd_cycles_round;
use crate::arrangement::{free_path, polyline_avoids, separates_geometric};
use crate::geom::{Obstacle, Polyline, Scene};
use crate::labeled_graph::{build_labeled_graph, project, route_reference_curves_seeded, Mode};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RemovalMode {
    /// Minimum deletion set of size at most the budget.
    Exact(usize),
    /// LP relaxation plus decomposition rounding.
    Approx(LpArith),
}

#[derive(Clone, Debug)]
pub struct RemovalResult {
    pub deleted: Vec<usize>,
    /// s→t polyline that meets none of the remaining obstacles.
    pub witness: Polyline,
    pub lp: Option<FractionalSolution>,
}

/// Deletes obstacles so that `s` and `t` become connected, and returns a
/// witness curve through the remaining free space.
pub fn obstacle_removal(sc: &Scene, mode: RemovalMode, seed: u64) -> Result<RemovalResult, Error> {
    let rc = route_reference_curves_seeded(sc, Mode::St, seed)?;
    let g = project(&build_labeled_graph(sc, &rc)?, 0);
    let (deleted, lp) = match mode {
        RemovalMode::Exact(q) => (oct_exact(&g, q).ok_or(Error::Infeasible(q))?, None),
        RemovalMode::Approx(arith) => {
            let sol = lp_hit_odd_cycles(&g, arith, DEFAULT_ITERATION_LIMIT)?;
            (hit_odd_cycles_round(&g, &sol)?, Some(sol))
        }
    };
    let keep: Vec<usize> = (0..sc.n()).filter(|i| !deleted.contains(i)).collect();
    let (s, t) = sc.st_pair().ok_or(Error::MissingPair)?;
    let (sname, tname) = (&sc.points[s].name, &sc.points[t].name);
    if separates_geometric(sc, &keep, sname, tname)? {
        return Err(Error::RoundingInfeasible);
    }
    let remaining: Vec<&Obstacle> = keep.iter().map(|&i| &sc.obstacles[i]).collect();
    let witness = free_path(&remaining, &sc.points[s].p, &sc.points[t].p).ok_or(Error::RoundingInfeasible)?;
    debug_assert!(polyline_avoids(&witness, &remaining));
    Ok(RemovalResult { deleted, witness, lp })
}
