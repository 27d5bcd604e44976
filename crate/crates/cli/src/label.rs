//! Stable numeric labels for seed derivation.

/// FNV-1a over a name's bytes. Used to fold policy, agent, and game names
/// into the seed-mixing labels, so a derived seed depends on *what* ran,
/// not on where it sat in some flag list. Hand-rolled because the label is
/// recorded in output files and must never change across releases or
/// platforms (the standard library's hashers make no such promise).
pub fn label(name: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in name.as_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
