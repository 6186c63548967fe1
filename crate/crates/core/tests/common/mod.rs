#![allow(dead_code)]

use std::path::PathBuf;

use tracelattice::fixtures::FixtureStore;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn store() -> FixtureStore {
    FixtureStore::load_dir(&fixture_dir()).expect("shipped fixtures load")
}
pub mod oracles;
