//! The bundled example configurations.

use std::path::{Path, PathBuf};

use crate::config::{PairingConfig, RawConfig, Choice, Task, CONFIG_SCHEMA};

fn s(x: impl ToString) -> String {
    x.to_string()
}

fn all_tasks() -> Vec<String> {
    Task::ALL.iter().map(|t| s(t.name())).collect()
}

fn without_stability() -> Vec<String> {
    Task::ALL
        .iter()
        .filter(|t| **t != Task::Stability)
        .map(|t| s(t.name()))
        .collect()
}

fn points(r: i64) -> Vec<String> {
    (0..r).map(s).collect()
}

fn same_weights(r: i64, w: &[&str]) -> Vec<Vec<String>> {
    (0..r).map(|_| w.iter().map(s).collect()).collect()
}

fn standard(symmetry: &str, target_degree: i64) -> PairingConfig {
    PairingConfig {
        symmetry: s(symmetry),
        target_degree,
        omega: Choice::Keyword(s("standard")),
    }
}

fn generic(
    name: &str,
    r: i64,
    splitting: Vec<i64>,
    weights: &[&str],
    symmetry: &str,
    seed: u64,
) -> RawConfig {
    RawConfig {
        schema: s(CONFIG_SCHEMA),
        name: s(name),
        points: points(r),
        splitting,
        flags: Choice::Keyword(s("generic")),
        weights: same_weights(r, weights),
        pairing: standard(symmetry, 0),
        tasks: all_tasks(),
        seed,
        genus: 2,
        output: None,
    }
}

/// `(file name, config)` for every bundled example.
pub fn examples() -> Vec<(String, RawConfig)> {
    let mut out = vec![
        (
            "sp2_r4.json",
            generic("sp2_r4", 4, vec![0, 0], &["1/4", "3/4"], "antisymmetric", 1),
        ),
        (
            "sp2_r5.json",
            generic("sp2_r5", 5, vec![0, 0], &["1/3", "2/3"], "antisymmetric", 1),
        ),
    ];

    // the flag at p is spanned by (1, p), which makes [[-z, 1], [-z^2, z]]
    // strongly parabolic and nilpotent
    let tuned = RawConfig {
        schema: s(CONFIG_SCHEMA),
        name: s("sp2_r4_tuned"),
        points: points(4),
        splitting: vec![0, 0],
        flags: Choice::Explicit(
            (0..4)
                .map(|p| vec![vec![s(0), s(1)], vec![s(1), s(p)]])
                .collect(),
        ),
        weights: same_weights(4, &["1/4", "3/4"]),
        pairing: standard("antisymmetric", 0),
        tasks: all_tasks(),
        seed: 1,
        genus: 2,
        output: None,
    };
    out.push(("sp2_r4_tuned.json", tuned));

    let identity = || vec![vec![s(1), s(0)], vec![s(0), s(1)]];
    let unstable = RawConfig {
        schema: s(CONFIG_SCHEMA),
        name: s("sp2_r3_unstable"),
        points: points(3),
        splitting: vec![1, -1],
        flags: Choice::Explicit((0..3).map(|_| identity()).collect()),
        weights: same_weights(3, &["1/3", "2/3"]),
        pairing: standard("antisymmetric", 0),
        tasks: all_tasks(),
        seed: 1,
        genus: 2,
        output: None,
    };
    out.push(("sp2_r3_unstable.json", unstable));

    // rank-2 stability does not apply beyond Sp(2)
    let fifths = ["1/5", "2/5", "3/5", "4/5"];
    for (file, cfg) in [
        (
            "so3_r4.json",
            generic(
                "so3_r4",
                4,
                vec![0, 0, 0],
                &["1/4", "1/2", "3/4"],
                "symmetric",
                2,
            ),
        ),
        (
            "so4_r4.json",
            generic("so4_r4", 4, vec![0; 4], &fifths, "symmetric", 3),
        ),
        (
            "sp4_r3.json",
            generic("sp4_r3", 3, vec![0; 4], &fifths, "antisymmetric", 4),
        ),
    ] {
        out.push((
            file,
            RawConfig {
                tasks: without_stability(),
                ..cfg
            },
        ));
    }
    out.into_iter().map(|(n, c)| (s(n), c)).collect()
}

pub fn render(cfg: &RawConfig) -> String {
    let mut text = serde_json::to_string_pretty(cfg).expect("config serializes");
    text.push('\n');
    text
}

/// Writes every example into `dir`, one result per file.
pub fn emit_examples(dir: &Path) -> Vec<(PathBuf, std::io::Result<()>)> {
    if let Err(e) = std::fs::create_dir_all(dir) {
        return vec![(dir.to_path_buf(), Err(e))];
    }
    examples()
        .into_iter()
        .map(|(name, cfg)| {
            let path = dir.join(name);
            let res = std::fs::write(&path, render(&cfg));
            (path, res)
        })
        .collect()
}
