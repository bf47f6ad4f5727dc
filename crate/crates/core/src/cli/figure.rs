use std::fs;
use std::path::PathBuf;

use super::{CliError, RunConfig};
use crate::asymptotics::{density_limit, empirical_density, CurveOrder, DensityCurve};
use crate::dp::dp_counts;

const EMPIRICAL_N: [u32; 3] = [16, 18, 20];
const CORRECTED_N: [u32; 2] = [20, 40];

/// Files written by [`cmd_figure1`], in write order.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureBundle {
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub curves: Vec<DensityCurve>,
}

impl FigureBundle {
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for f in &self.files {
            out.push_str(&f.display().to_string());
            out.push('\n');
        }
        out
    }

    pub fn curve(&self, order: CurveOrder) -> Option<&DensityCurve> {
        self.curves.iter().find(|c| c.order == order)
    }
}

fn file_name(order: CurveOrder) -> String {
    match order {
        CurveOrder::Limit => "limit.csv".into(),
        CurveOrder::Corrected(n) => format!("corrected_n{n}.csv"),
        CurveOrder::Empirical(n) => format!("empirical_n{n}.csv"),
    }
}

/// Finite-`N` lattice densities for `N = 16, 18, 20`, the limit law, and
/// the `1/N`-corrected curves for `N = 20, 40`, plus a gnuplot script.
pub fn cmd_figure1(cfg: &RunConfig) -> Result<FigureBundle, CliError> {
    let a_max = cfg.a_max;
    let step = cfg.step.unwrap_or(0.005);
    let mut curves = Vec::new();
    for n in EMPIRICAL_N {
        let d = dp_counts(n)?;
        // refuse to emit anything built on an inconsistent table
        d.validate()?;
        let mut c = empirical_density(&d);
        c.points.retain(|p| p.0.abs() <= a_max + 1e-12);
        curves.push(c);
    }
    curves.push(DensityCurve::sample(CurveOrder::Limit, a_max, step)?);
    for n in CORRECTED_N {
        curves.push(DensityCurve::sample(CurveOrder::Corrected(n), a_max, step)?);
    }
    debug_assert_eq!(density_limit(0.0), std::f64::consts::PI);

    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("figure1"));
    fs::create_dir_all(&dir)?;
    let mut files = Vec::new();
    for c in &curves {
        let path = dir.join(file_name(c.order));
        fs::write(&path, c.to_csv())?;
        files.push(path);
    }
    let script = dir.join("figure1.gp");
    fs::write(&script, plot_script(a_max))?;
    files.push(script);
    Ok(FigureBundle { dir, files, curves })
}

/// Gnuplot commands reading the CSVs from the script's own directory.
pub fn plot_script(a_max: f64) -> String {
    let mut s = String::new();
    s.push_str("# Scaling function of the area distribution of closed N-step lattice walks.\n");
    s.push_str("# Run from this directory: gnuplot figure1.gp\n");
    s.push_str("set terminal pngcairo size 900,650\n");
    s.push_str("set output 'figure1.png'\n");
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set xrange [{}:{}]\n", -a_max, a_max));
    s.push_str("set xlabel 'a = A/N'\n");
    s.push_str("set ylabel 'P_N(a)'\n");
    s.push_str("set key top right\n");
    let markers = [
        ("16", 12, "diamond"),
        ("18", 1, "plus"),
        ("20", 8, "triangle"),
    ];
    let mut items = vec![
        "'limit.csv' every ::1 using 2:3 with lines lw 2 lc rgb 'black' title 'N -> infinity'"
            .to_string(),
    ];
    for n in CORRECTED_N {
        items.push(format!(
            "'corrected_n{n}.csv' every ::1 using 2:3 with lines dt 2 title '1/N correction, N = {n}'"
        ));
    }
    for (n, pt, shape) in markers {
        items.push(format!(
            "'empirical_n{n}.csv' every ::1 using 2:3 with points pt {pt} title 'N = {n} ({shape})'"
        ));
    }
    s.push_str("plot ");
    s.push_str(&items.join(", \\\n     "));
    s.push('\n');
    s
}
