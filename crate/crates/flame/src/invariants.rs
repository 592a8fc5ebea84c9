//! Per-thread switch for the structural assertions embedded in the
//! algorithms (connectivity preservation during peel, flame preservation
//! during grow, branching invariants, ...). These recompute expensive
//! quantities, so they default to on only in debug builds; the CLI exposes
//! them behind `--debug-assert`.

use std::cell::Cell;

thread_local! {
    static ENABLED: Cell<bool> = const { Cell::new(cfg!(debug_assertions)) };
}

pub fn enabled() -> bool {
    ENABLED.with(|c| c.get())
}

pub fn set_enabled(on: bool) {
    ENABLED.with(|c| c.set(on));
}
