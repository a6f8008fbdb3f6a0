//! Shared fixtures for the benchmarks.

use zetaqva::cartan::{build_context, CartanType, RootUnityCtx};

/// The contexts the benchmarks sweep, from cheapest to most expensive.
pub fn contexts() -> Vec<RootUnityCtx> {
    [(CartanType::A, 1, 7, 1), (CartanType::A, 2, 8, 1), (CartanType::B, 2, 9, 2)]
        .into_iter()
        .map(|(t, rank, p, l)| build_context(t, rank, p, l).expect("fixture context is valid"))
        .collect()
}
