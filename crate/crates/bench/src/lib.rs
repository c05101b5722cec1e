//! Shared fixtures for the criterion benches.

use ppverify_core::{build_g_thm1, FieldCtx, FieldMap};

/// Tower context and the materialized first-theorem map.
pub fn thm1_fixture(k: u32) -> (FieldCtx, FieldMap) {
    let ctx = FieldCtx::tower(2, k, None).expect("valid tower");
    let g = build_g_thm1(&ctx).expect("tower ctx").materialize();
    (ctx, g)
}
