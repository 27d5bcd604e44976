//! The one-line run-description comment every output file starts with.

/// `# rootbandit <version> | <resolved flags> | seed=<seed>`
///
/// `flags` is the fully resolved command line (defaults and config-file
/// values folded in), so re-running it with `--seed` reproduces the file.
pub fn header_line(flags: &str, seed: u64) -> String {
    format!(
        "# rootbandit {} | {} | seed={}\n",
        env!("CARGO_PKG_VERSION"),
        flags,
        seed
    )
}

/// Comma-join anything displayable, for flag summaries.
pub fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_shape() {
        let h = header_line("mab --problems 5", 7);
        assert!(h.starts_with("# rootbandit "));
        assert!(h.contains(" | mab --problems 5 | seed=7\n"));
        assert_eq!(h.lines().count(), 1);
    }

    #[test]
    fn join_formats_numbers() {
        assert_eq!(join(&[100u64, 200]), "100,200");
        assert_eq!(join(&[0.5f64, 1.0]), "0.5,1");
        assert_eq!(join::<u64>(&[]), "");
    }
}
