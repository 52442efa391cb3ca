//! Holds the acceptance suite under `tests/acceptance.rs`; run it with `cargo test -p quillen-validation --test acceptance`.
