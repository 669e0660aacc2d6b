//! Exact-arithmetic analysis of discrete reaction networks.
//!
//! A discrete reaction network is a finite list of reactions over `d` species.
//! Each reaction has an *origin* (the smallest population vector it can fire
//! from) and a *drift* (the net population change it causes), and a reaction
//! may never drive a population negative. The crate decides global dynamical
//! properties of such networks, in both their unrestricted and
//! large-copy-number forms, and backs every verdict with a witness or
//! certificate that re-verifies by exact substitution or by replaying paths:
//!
//! - [`analysis::is_lcn_irreducible`]: mutual reachability above a threshold,
//!   decided through exact rational linear programming and Hermite normal
//!   forms.
//! - [`analysis::is_irreducible`]: mutual reachability everywhere.
//! - [`analysis::is_lcn_recurrent`] and [`analysis::check_recurrence`]:
//!   reversibility of reachability, the latter a semi-decision with an
//!   explicit exploration budget.
//! - [`reach`]: bounded explicit-state reachability, the brute-force ground
//!   truth behind the semi-decisions.
//!
//! All arithmetic is arbitrary-precision (`num_bigint::BigInt` populations,
//! `num_rational::BigRational` solver state); nothing in the crate rounds.

pub mod analysis;
pub mod exactmath;
pub mod model;
pub mod parser;
pub mod reach;

mod vecutil;

/// Execution strategy for the data-parallel inner loops: reachability
/// frontier expansion and batched LP solves.
///
/// `Parallel` falls back to sequential execution when the crate is built
/// without the `parallel` feature. Both modes produce identical results; the
/// parallel paths fan out per-item work and then merge in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Maps `f` over `items`, in parallel when `mode` asks for it and the
/// `parallel` feature is compiled in. Output order always matches input
/// order.
pub(crate) fn map_maybe_par<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if mode == ExecMode::Parallel {
            return items.par_iter().map(&f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}
