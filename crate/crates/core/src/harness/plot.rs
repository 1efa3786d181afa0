use std::path::Path;

use crate::error::{Error, Result};

/// Writes a matplotlib script that draws the tracking error `e1(t)` and the
/// elevation command `u1(t)` for each labelled CSV, one figure each
/// (`tracking_error.png`, `control_input.png`) next to the script.
///
/// CSV paths are written relative to the script's directory when possible.
pub fn emit_plot_script(runs: &[(&str, &Path)], path: &Path) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new(""));
    let entries: Vec<String> = runs
        .iter()
        .map(|(label, csv)| {
            let rel = csv.strip_prefix(dir).unwrap_or(csv);
            format!("    ({label:?}, {:?}),", rel.to_string_lossy())
        })
        .collect();
    let script = format!(
        r#"#!/usr/bin/env python3
"""Tracking error and control input of closed-loop runs."""
import csv
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
RUNS = [
{entries}
]


def load(name):
    with open(os.path.join(HERE, name), newline="") as f:
        rows = list(csv.DictReader(f))
    return {{k: [float(r[k]) for r in rows] for k in ("t", "e1", "u1")}}


def figure(column, ylabel, scale, out):
    fig, ax = plt.subplots(figsize=(7, 3.5))
    for label, name in RUNS:
        d = load(name)
        ax.plot(d["t"], [v * scale for v in d[column]], label=label, linewidth=1.0)
    ax.set_xlabel("t (s)")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, out), dpi=150)
    plt.close(fig)


figure("e1", "tracking error e1 (deg)", 180.0 / math.pi, "tracking_error.png")
figure("u1", "control input u1", 1.0, "control_input.png")
"#,
        entries = entries.join("\n")
    );
    std::fs::write(path, script).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
