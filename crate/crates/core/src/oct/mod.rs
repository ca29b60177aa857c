mod exact;
mod lp;
mod removal;
mod round;

pub use exact::{oct_brute_force, oct_exact, subdivide_zero_edges, SubdividedGraph};
pub use lp::{lp_hit_odd_cycles, objective_f64, FractionalSolution, LpArith, DEFAULT_ITERATION_LIMIT};
pub use removal::{obstacle_removal, RemovalMode, RemovalResult};
pub use round::{hit_odd_cycles_round, low_diameter_decomposition, max_component_diameter, underlying_simple};
