mod cycles;
mod oracle;
mod partition;

pub use cycles::{
    cycle_with_odd_bits, detect_odd_cycle, is_P_good, is_well_behaved, parity_of, parity_partition, partition_of_cycle,
    shortest_odd_cycle, CycleCertificate,
};
pub use oracle::{brute_force_partition, simple_cycle_parities, ORACLE_MAX_VERTICES};
pub use partition::{enumerate_coarsenings, minimal_generating_subset, partition_meet, Partition};
