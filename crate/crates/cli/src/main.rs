//! `matterlab` — command-line front end for the solver crate.
//!
//! Exit codes: 0 success, 1 solver failure, 2 usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use matterlab::bounds;
use matterlab::constants::{codata, PhysicalConstants, CONSTANTS_VERSION};
use matterlab::exact::{rational_str, HalfInt};
use matterlab::star;
use matterlab::tf_atom;
use matterlab::white_dwarf;
use matterlab::zeeman;

/// CODATA 2018 atomic mass constant, kg; only the CLI's `--mu-per-electron`
/// flag (given in u) needs it.
const AMU_KG: f64 = 1.660_539_066_60e-27;

#[derive(Parser)]
#[command(name = "matterlab", version, about = "Exclusion-principle matter calculators: Zeeman/Lande tables, atomic energy bounds, Thomas-Fermi atoms, gravitating-matter scaling laws, and white-dwarf structure")]
struct Cli {
    /// Emit a JSON object instead of the text report (rationals as strings)
    #[arg(long, global = true)]
    json: bool,
    /// Write a reproducibility manifest (parameters, constants version,
    /// output digests) to this path
    #[arg(long, global = true, value_name = "FILE")]
    manifest_out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lande g-factors, strong/weak-field Zeeman tables for a term (L, S)
    Zeeman {
        /// Orbital quantum number L (integer)
        #[arg(long = "L")]
        l: String,
        /// Spin quantum number S (integer or half-integer, e.g. 1/2)
        #[arg(long = "S")]
        s: String,
        /// Strong-field (Paschen-Back) level table
        #[arg(long)]
        strong: bool,
        /// Weak-field splittings M*g per level
        #[arg(long)]
        weak: bool,
        /// g-factor table (default)
        #[arg(long)]
        g: bool,
    },
    /// Rigorous and heuristic energy/size bounds for Coulomb systems
    Bounds {
        /// Electron (particle) count
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        /// Nuclear charge
        #[arg(long = "Z", default_value_t = 1)]
        z: u32,
        #[arg(long, value_enum)]
        which: Which,
        /// Write the variational minimizer profile as CSV (sobolev/holder)
        #[arg(long, value_name = "CSV")]
        profile_out: Option<PathBuf>,
    },
    /// Neutral Thomas-Fermi atom: screening function and energies
    TfAtom {
        #[arg(long = "Z")]
        z: u32,
        /// Write the electron density profile as CSV
        #[arg(long, value_name = "CSV")]
        profile_out: Option<PathBuf>,
    },
    /// Heuristic single-zone model of gravitating bulk matter
    Star {
        /// Electron count
        #[arg(long = "N")]
        n: f64,
        #[arg(long = "Z", default_value_t = 1)]
        z: u32,
        #[arg(long = "A", default_value_t = 1)]
        a: u32,
        /// Relativistic kinetic energy (collapse threshold analysis)
        #[arg(long)]
        relativistic: bool,
        /// Bose statistics scaling law instead of the fermion model
        #[arg(long)]
        bosons: bool,
    },
    /// White-dwarf structure from the relativistic degenerate-electron EOS
    Wd {
        /// Mass per electron in atomic mass units u (e.g. 2.0 for Z/A = 1/2)
        #[arg(long, value_name = "U", conflicts_with = "za")]
        mu_per_electron: Option<f64>,
        /// Z/A of the matter; mass per electron = (A/Z) nucleon masses
        #[arg(long = "ZA")]
        za: Option<f64>,
        /// Central mass density in g/cm^3, or `sweep` / `sweep:LO:HI:COUNT`
        /// for a mass-radius curve
        #[arg(long)]
        nc: String,
        /// Write the mass-radius curve as CSV (sweep mode)
        #[arg(long, value_name = "CSV")]
        curve_out: Option<PathBuf>,
    },
    /// Print the built-in physical constant set
    Constants,
}

#[derive(Copy, Clone, ValueEnum)]
enum Which {
    /// Shell-filling (Balmer) energy brackets
    Shell,
    /// Sobolev-inequality hydrogenic lower bound (variational)
    Sobolev,
    /// Kinetic-Coulomb Hoelder lower bound (variational)
    Holder,
    /// Atom radius lower bound
    Size,
    /// Lieb-Thirring bulk-matter lower bound
    Lt,
    /// Charged-boson N^{7/5} bounds
    Boson,
}

enum CliError {
    Usage(String),
    Solver(String),
}

impl From<matterlab::Error> for CliError {
    fn from(e: matterlab::Error) -> Self {
        CliError::Solver(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Solver(format!("i/o error: {e}"))
    }
}

/// What a subcommand produced: a text report, the same content as JSON,
/// the parameters for the manifest, and any side files written.
struct Output {
    text: String,
    json: Value,
    params: Value,
    files: Vec<(PathBuf, String)>, // path, sha256 of contents
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Solver(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let k = codata();
    let mut out = match &cli.cmd {
        Cmd::Zeeman { l, s, strong, weak, g } => cmd_zeeman(l, s, *strong, *weak, *g)?,
        Cmd::Bounds { n, z, which, profile_out } => cmd_bounds(*n, *z, *which, profile_out.as_deref())?,
        Cmd::TfAtom { z, profile_out } => cmd_tf_atom(*z, profile_out.as_deref())?,
        Cmd::Star { n, z, a, relativistic, bosons } => cmd_star(*n, *z, *a, *relativistic, *bosons, &k)?,
        Cmd::Wd { mu_per_electron, za, nc, curve_out } => {
            cmd_wd(*mu_per_electron, *za, nc, curve_out.as_deref(), &k)?
        }
        Cmd::Constants => cmd_constants(&k),
    };

    let payload = if cli.json {
        let mut s = serde_json::to_string_pretty(&out.json)
            .map_err(|e| CliError::Solver(format!("json encoding: {e}")))?;
        s.push('\n');
        s
    } else {
        std::mem::take(&mut out.text)
    };
    print!("{payload}");

    if let Some(path) = &cli.manifest_out {
        let manifest = json!({
            "subcommand": subcommand_name(&cli.cmd),
            "parameters": out.params,
            "json_mode": cli.json,
            "constants_version": CONSTANTS_VERSION,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "timestamp": chrono::Utc::now().to_rfc3339(),
            "stdout_sha256": sha256_hex(payload.as_bytes()),
            "output_files": out.files.iter().map(|(p, d)| json!({
                "path": p.display().to_string(),
                "sha256": d,
            })).collect::<Vec<_>>(),
        });
        let body = serde_json::to_string_pretty(&manifest)
            .map_err(|e| CliError::Solver(format!("json encoding: {e}")))?;
        std::fs::write(path, body + "\n")?;
    }
    Ok(())
}

fn subcommand_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Zeeman { .. } => "zeeman",
        Cmd::Bounds { .. } => "bounds",
        Cmd::TfAtom { .. } => "tf-atom",
        Cmd::Star { .. } => "star",
        Cmd::Wd { .. } => "wd",
        Cmd::Constants => "constants",
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let d = h.finalize();
    d.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write an RFC-4180 CSV (CRLF line endings, header row) and return its
/// digest record.
fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<(PathBuf, String), CliError> {
    let mut body = String::with_capacity(rows.len() * 64 + header.len() + 2);
    body.push_str(header);
    body.push_str("\r\n");
    for row in rows {
        body.push_str(row);
        body.push_str("\r\n");
    }
    std::fs::write(path, &body)?;
    Ok((path.to_path_buf(), sha256_hex(body.as_bytes())))
}

fn parse_half_int(label: &str, s: &str) -> Result<HalfInt, CliError> {
    s.parse::<HalfInt>()
        .map_err(|e| CliError::Usage(format!("--{label}: {e}")))
}

// ---------------------------------------------------------------------------
// zeeman
// ---------------------------------------------------------------------------

fn cmd_zeeman(l: &str, s: &str, strong: bool, weak: bool, g: bool) -> Result<Output, CliError> {
    if [strong, weak, g].iter().filter(|b| **b).count() > 1 {
        return Err(CliError::Usage("pick one of --strong, --weak, --g".into()));
    }
    let l = parse_half_int("L", l)?;
    let s = parse_half_int("S", s)?;
    if !l.is_integer() || l.is_negative() {
        return Err(CliError::Usage("--L must be a nonnegative integer".into()));
    }
    let params = json!({"L": l.to_string(), "S": s.to_string(),
                        "mode": if strong { "strong" } else if weak { "weak" } else { "g" }});
    let mut text = format!("term L = {l}, S = {s} (multiplicity {})\n", s.twice() + 1);

    if strong {
        let table = zeeman::strong_field_table(l, s)?;
        text.push_str("strong-field (Paschen-Back) levels; slope = dE/(mu0 B), exact\n");
        text.push_str("  M_L   M_S     M   slope\n");
        let mut states = Vec::new();
        for st in &table {
            let _ = writeln!(
                text,
                "{:>5} {:>5} {:>5}   {}",
                st.m_l.to_string(),
                st.m_s.to_string(),
                st.m.to_string(),
                rational_str(&st.strong_field_slope)
            );
            states.push(json!({
                "M_L": st.m_l.to_string(), "M_S": st.m_s.to_string(),
                "M": st.m.to_string(), "slope": rational_str(&st.strong_field_slope),
            }));
        }
        return Ok(Output {
            text,
            json: json!({"subcommand": "zeeman", "term": params.clone(), "units": "dE in mu0*B", "states": states}),
            params,
            files: vec![],
        });
    }

    let g_map = zeeman::g_from_sum_rule(l, s)?;
    if g_map.is_empty() {
        return Err(CliError::Solver(
            "no level with J > 0 in this term; g is undefined".into(),
        ));
    }
    if weak {
        text.push_str("weak-field splittings; shift = M*g in units of mu0 B, exact\n");
        let mut levels = Vec::new();
        for (&j, gj) in &g_map {
            let mut shifts = Vec::new();
            let mut line = format!("  J = {j} (g = {}):", rational_str(gj));
            for (m, shift) in zeeman::weak_field_splitting(*gj, j) {
                let _ = write!(line, "  {m} -> {}", rational_str(&shift));
                shifts.push(json!({"M": m.to_string(), "shift": rational_str(&shift)}));
            }
            text.push_str(&line);
            text.push('\n');
            levels.push(json!({"J": j.to_string(), "g": rational_str(gj), "shifts": shifts}));
        }
        return Ok(Output {
            text,
            json: json!({"subcommand": "zeeman", "term": params.clone(), "units": "dE in mu0*B", "levels": levels}),
            params,
            files: vec![],
        });
    }

    text.push_str("Lande g-factors (sum-rule reconstruction, dimensionless, exact)\n");
    let mut levels = Vec::new();
    for (&j, gj) in &g_map {
        let _ = writeln!(text, "  J = {:<4}  g = {}", j.to_string(), rational_str(gj));
        levels.push(json!({"J": j.to_string(), "g": rational_str(gj)}));
    }
    Ok(Output {
        text,
        json: json!({"subcommand": "zeeman", "term": params.clone(), "levels": levels}),
        params,
        files: vec![],
    })
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

fn minimizer_csv(
    b: &bounds::VariationalBound,
    path: &Path,
) -> Result<(PathBuf, String), CliError> {
    let rows: Vec<String> = b
        .minimizer
        .r()
        .iter()
        .zip(b.minimizer.values())
        .map(|(r, v)| format!("{r:e},{v:e}"))
        .collect();
    write_csv(path, "r_a0,rho_per_a03", &rows)
}

fn cmd_bounds(
    n: u64,
    z: u32,
    which: Which,
    profile_out: Option<&Path>,
) -> Result<Output, CliError> {
    let mut files = Vec::new();
    let (text, json, params) = match which {
        Which::Shell => {
            let fill = bounds::fill_levels(n);
            let lower = bounds::shell_fill_lower_bound(n, z);
            let upper = bounds::shell_fill_upper_bound(n, z);
            let tf = bounds::tf_reference_energy(z);
            let mut text = format!(
                "shell-filling bounds for N = {n}, Z = {z}\n\
                 filled Balmer levels: n <= {} (remainder {} in level {})\n\
                 lower (exact):       E >= {} Z^2 Ry = {} Ry\n\
                 lower (asymptotic):  E >= {:.6} Ry  [up to O(N^-1/3)]\n",
                fill.n0,
                fill.remainder,
                fill.n0 + 1,
                lower.exact.value_ry / (z as f64 * z as f64),
                lower.exact.value_ry,
                lower.asymptotic.value_ry,
            );
            match &upper.bound {
                Some(b) => {
                    let _ = writeln!(text, "upper (asymptotic):  E <= {:.6} Ry  [{}]", b.value_ry, upper.note);
                }
                None => {
                    let _ = writeln!(text, "upper: {}", upper.note);
                }
            }
            let _ = writeln!(text, "Thomas-Fermi reference (neutral): {tf:.6} Ry");
            let j = json!({
                "subcommand": "bounds", "which": "shell", "N": n, "Z": z,
                "units": "Ry",
                "filling": fill,
                "lower": lower,
                "upper": upper,
                "tf_reference_ry": tf,
            });
            (text, j, json!({"N": n, "Z": z, "which": "shell"}))
        }
        Which::Sobolev | Which::Holder => {
            let zf = z as f64;
            let opts = bounds::VariationalOptions::default();
            let (label, b) = match which {
                Which::Sobolev => ("sobolev", bounds::sobolev_hydrogen_bound(zf, &opts)?),
                _ => ("holder", bounds::holder_bound(zf, bounds::HOLDER_K1_IMPROVED, &opts)?),
            };
            if let Some(p) = profile_out {
                files.push(minimizer_csv(&b, p)?);
            }
            let text = format!(
                "{label} lower bound for Z = {z}\n\
                 analytic minimum: {:.8} Ry\n\
                 numeric minimum:  {:.8} Ry  ({} iterations, last change {:.2e})\n",
                b.analytic_ry, b.numeric_ry, b.convergence.iterations, b.convergence.last_change,
            );
            let j = json!({
                "subcommand": "bounds", "which": label, "Z": z, "units": "Ry",
                "analytic_ry": b.analytic_ry,
                "numeric_ry": b.numeric_ry,
                "numeric_display": format!("{:.6}", b.numeric_ry),
                "iterations": b.convergence.iterations,
            });
            (text, j, json!({"Z": z, "which": label}))
        }
        Which::Size => {
            let b = bounds::atom_size_lower_bound(n);
            let text = format!(
                "atom-size lower bound for N = {n}  [asymptotic]\n\
                 r >= {:.6} a0   (coefficient {:.6} ~ 0.71, times N^-1/3)\n",
                b.radius_a0, b.coefficient,
            );
            let j = json!({
                "subcommand": "bounds", "which": "size", "N": n, "units": "a0",
                "bound": b,
            });
            (text, j, json!({"N": n, "which": "size"}))
        }
        Which::Lt => {
            let spec = bounds::SystemSpec::new(n, vec![z], bounds::Statistics::Fermion)?;
            let b = bounds::lieb_thirring_bound(&spec, bounds::LIEB_THIRRING_CONSTANT)?;
            let text = format!(
                "Lieb-Thirring lower bound for N = {n} electrons, nuclear charge Z = {z}\n\
                 E >= {:.6e} Ry   (constant {}, per-electron {:.6e} Ry)\n",
                b.value_ry,
                bounds::LIEB_THIRRING_CONSTANT,
                b.value_ry / n as f64,
            );
            let j = json!({
                "subcommand": "bounds", "which": "lt", "N": n, "Z": z, "units": "Ry",
                "bound": b, "constant": bounds::LIEB_THIRRING_CONSTANT,
            });
            (text, j, json!({"N": n, "Z": z, "which": "lt"}))
        }
        Which::Boson => {
            let b = bounds::boson_bounds(n as f64, bounds::BOSON_UPPER_SMALL);
            let text = format!(
                "charged-boson bounds for N = {n}  [N^{{7/5}} law, dynamic nuclei]\n\
                 {:.6e} Ry >= E >= {:.6e} Ry   (lower coefficient A = {})\n",
                b.upper_ry, b.lower_ry, b.lower_coefficient,
            );
            let j = json!({
                "subcommand": "bounds", "which": "boson", "N": n, "units": "Ry",
                "bounds": b,
            });
            (text, j, json!({"N": n, "which": "boson"}))
        }
    };
    Ok(Output { text, json, params, files })
}

// ---------------------------------------------------------------------------
// tf-atom
// ---------------------------------------------------------------------------

fn cmd_tf_atom(z: u32, profile_out: Option<&Path>) -> Result<Output, CliError> {
    let scr = tf_atom::solve_screening(1e-12)?;
    let e = tf_atom::tf_energy(&scr, z)?;
    let mut files = Vec::new();
    if let Some(p) = profile_out {
        let prof = tf_atom::density_profile(&scr, z)?;
        let rows: Vec<String> = prof
            .r()
            .iter()
            .zip(prof.values())
            .map(|(r, v)| format!("{r:e},{v:e}"))
            .collect();
        files.push(write_csv(p, "r_a0,n_per_a03", &rows)?);
    }
    let text = format!(
        "Thomas-Fermi neutral atom, Z = {z}\n\
         screening slope phi'(0) = {:.9}\n\
         total energy:  {:.6} Ry   ({:.6} Z^(7/3) Ry)\n\
         direct route:  {:.6} Ry   (K = {:.6}, U_en = {:.6}, U_ee = {:.6} Ry)\n",
        e.slope0,
        e.total_ry,
        e.total_ry / (z as f64).powf(7.0 / 3.0),
        e.direct_ry,
        e.kinetic_ry,
        e.attraction_ry,
        e.repulsion_ry,
    );
    let json = json!({
        "subcommand": "tf-atom", "Z": z, "units": "Ry",
        "slope0": e.slope0,
        "total_ry": e.total_ry,
        "total_display": format!("{:.4}", e.total_ry),
        "per_z73_ry": e.total_ry / (z as f64).powf(7.0 / 3.0),
        "direct_ry": e.direct_ry,
        "kinetic_ry": e.kinetic_ry,
        "attraction_ry": e.attraction_ry,
        "repulsion_ry": e.repulsion_ry,
    });
    Ok(Output { text, json, params: json!({"Z": z}), files })
}

// ---------------------------------------------------------------------------
// star
// ---------------------------------------------------------------------------

fn cmd_star(
    n: f64,
    z: u32,
    a: u32,
    relativistic: bool,
    bosons: bool,
    k: &PhysicalConstants,
) -> Result<Output, CliError> {
    let params = json!({"N": n, "Z": z, "A": a, "relativistic": relativistic, "bosons": bosons});
    if bosons {
        let b = star::boson_scaling(n);
        let text = format!(
            "boson scaling law (heuristic model), N = {n:e}\n\
             E0 ~ {:.6e} Ry (N^(5/3) law, fixed nuclei)\n\
             fermion reference ~ {:.6e} Ry (linear law)\n\
             rigorous dynamic-nuclei exponent: {}\n",
            b.e0_ry, b.fermion_e0_ry, b.dynamic_nuclei_exponent,
        );
        let json = json!({"subcommand": "star", "model": "boson-scaling", "units": "Ry", "result": b});
        return Ok(Output { text, json, params, files: vec![] });
    }
    let input = star::HeuristicInput::new(n, z, a, true)?;
    let crit = star::critical_numbers(z, a, k)?;
    if relativistic {
        let r = star::relativistic_minimum(&input, k);
        let threshold = star::relativistic_threshold(z, a, k);
        let text = match r.regime {
            star::Regime::Unbounded => format!(
                "relativistic single-zone model (heuristic), N = {n:e}, Z = {z}, A = {a}\n\
                 regime: unbounded — no energy minimum (N above threshold {threshold:.4e})\n",
            ),
            _ => format!(
                "relativistic single-zone model (heuristic), N = {n:e}, Z = {z}, A = {a}\n\
                 p0/mc = {:.6e} (dimensionless), E0 = {:.6e} Ry\n\
                 collapse threshold: N_r = {threshold:.4e} electrons (model)\n",
                r.p0_over_mc, r.e0_ry,
            ),
        };
        let json = json!({
            "subcommand": "star", "model": "relativistic", "units": "Ry",
            "result": r, "threshold_n": threshold,
            "critical_numbers": crit,
        });
        return Ok(Output { text, json, params, files: vec![] });
    }
    let r = star::minimize_nonrel(&input, k);
    let text = format!(
        "nonrelativistic single-zone model (heuristic), N = {n:e}, Z = {z}, A = {a}\n\
         p0/mc = {:.6e} (dimensionless)\n\
         E0 = {:.6e} Ry\n\
         n0 = {:.6e} a0^-3,  rho0 = {:.4} g/cm^3\n\
         gravity/Coulomb crossover: N_c = {:.4e} electrons (model)\n",
        r.p0_over_mc, r.e0_ry, r.n0_per_a03, r.rho0_g_cm3, crit.n_c,
    );
    let json = json!({
        "subcommand": "star", "model": "nonrelativistic", "units": "Ry, g/cm3, a0^-3",
        "result": r, "critical_numbers": crit,
    });
    Ok(Output { text, json, params, files: vec![] })
}

// ---------------------------------------------------------------------------
// wd
// ---------------------------------------------------------------------------

fn wd_mu_kg(
    mu_per_electron: Option<f64>,
    za: Option<f64>,
    k: &PhysicalConstants,
) -> Result<f64, CliError> {
    match (mu_per_electron, za) {
        (Some(u), None) if u > 0.0 => Ok(u * AMU_KG),
        (None, Some(r)) if r > 0.0 && r <= 1.0 => Ok(k.nucleon_mass_kg / r),
        (None, None) => Err(CliError::Usage(
            "one of --mu-per-electron or --ZA is required".into(),
        )),
        _ => Err(CliError::Usage(
            "--mu-per-electron must be > 0; --ZA must be in (0, 1]".into(),
        )),
    }
}

/// Central Fermi momentum x_c = p_F/mc from a mass density in g/cm^3.
fn x_c_of_rho(rho_g_cm3: f64, mu_kg: f64, k: &PhysicalConstants) -> f64 {
    let n_m3 = rho_g_cm3 * 1e3 / mu_kg;
    let lam = k.electron_compton_m();
    (3.0 * std::f64::consts::PI.powi(2) * n_m3 * lam * lam * lam).cbrt()
}

fn cmd_wd(
    mu_per_electron: Option<f64>,
    za: Option<f64>,
    nc: &str,
    curve_out: Option<&Path>,
    k: &PhysicalConstants,
) -> Result<Output, CliError> {
    let mu_kg = wd_mu_kg(mu_per_electron, za, k)?;
    let params = json!({"mu_per_electron_kg": mu_kg, "nc": nc});

    // sweep specs: "sweep" or "sweep:LO:HI:COUNT" (densities in g/cm^3)
    if nc == "sweep" || nc.starts_with("sweep:") {
        let grid: Vec<f64> = if nc == "sweep" {
            // default: central Fermi momenta from deep nonrelativistic to
            // strongly relativistic, log-spaced
            let (lo, hi, m) = (0.05f64, 200.0f64, 49usize);
            (0..m)
                .map(|i| lo * (hi / lo).powf(i as f64 / (m - 1) as f64))
                .collect()
        } else {
            let parts: Vec<&str> = nc.split(':').collect();
            if parts.len() != 4 {
                return Err(CliError::Usage("sweep spec is sweep:LO:HI:COUNT".into()));
            }
            let lo: f64 = parts[1].parse().map_err(|_| CliError::Usage("bad sweep LO".into()))?;
            let hi: f64 = parts[2].parse().map_err(|_| CliError::Usage("bad sweep HI".into()))?;
            let m: usize = parts[3].parse().map_err(|_| CliError::Usage("bad sweep COUNT".into()))?;
            if !(lo > 0.0 && hi > lo && m >= 2) {
                return Err(CliError::Usage("need 0 < LO < HI and COUNT >= 2".into()));
            }
            (0..m)
                .map(|i| {
                    let rho = lo * (hi / lo).powf(i as f64 / (m - 1) as f64);
                    x_c_of_rho(rho, mu_kg, k)
                })
                .collect()
        };
        let curve = white_dwarf::mass_radius_curve(&grid, mu_kg, k)?;
        let mut files = Vec::new();
        if let Some(p) = curve_out {
            let rows: Vec<String> = curve
                .points
                .iter()
                .map(|pt| {
                    format!(
                        "{:e},{:e},{:e},{:e},{:e},{:e}",
                        pt.central_density_m3,
                        pt.n_electrons,
                        pt.mass_kg,
                        pt.mass_solar,
                        pt.radius_m,
                        pt.e_tf_joule
                    )
                })
                .collect();
            files.push(write_csv(p, "n_c,N,M_kg,M_solar,R_m,E_TF", &rows)?);
        }
        let text = format!(
            "white-dwarf mass-radius curve, mass per electron {:.4e} kg ({} points)\n\
             columns: n_c [m^-3], N, M [kg], M [M_sun], R [m], E_TF [J]\n\
             limiting mass: {:.4} M_sun ({:.4e} kg), N_lim = {:.4e}\n\
             tau at limit = kappa N^(2/3) = {:.4}\n",
            mu_kg,
            curve.points.len(),
            curve.limiting_mass_solar,
            curve.limiting_mass_kg,
            curve.limiting_n,
            curve.tau_at_limit,
        );
        let crit = white_dwarf::critical_tau()?;
        let json = json!({
            "subcommand": "wd", "mode": "sweep",
            "mu_per_electron_kg": mu_kg,
            "units": {"n_c": "m^-3", "M_kg": "kg", "M_solar": "M_sun", "R_m": "m", "E_TF": "J"},
            "points": curve.points,
            "limiting_mass_solar": curve.limiting_mass_solar,
            "limiting_mass_display": format!("{:.3}", curve.limiting_mass_solar),
            "limiting_n": curve.limiting_n,
            "tau_at_limit": curve.tau_at_limit,
            "critical_tau": crit,
        });
        return Ok(Output { text, json, params, files });
    }

    let rho: f64 = nc
        .parse()
        .map_err(|_| CliError::Usage(format!("--nc: expected a density in g/cm^3 or `sweep`, got {nc:?}")))?;
    if !(rho > 0.0) {
        return Err(CliError::Usage("--nc must be positive".into()));
    }
    let x_c = x_c_of_rho(rho, mu_kg, k);
    let m = white_dwarf::solve_structure(x_c, mu_kg, k)?;
    let text = format!(
        "white-dwarf configuration, central density {rho} g/cm^3 (x_c = {x_c:.4})\n\
         N = {:.6e} electrons\n\
         M = {:.6e} kg = {:.4} M_sun\n\
         R = {:.6e} m\n\
         E_TF = {:.6e} J\n",
        m.n_electrons, m.mass_kg, m.mass_solar, m.radius_m, m.e_tf_joule,
    );
    let json = json!({
        "subcommand": "wd", "mode": "single",
        "units": {"central_density": "m^-3", "mass": "kg", "radius": "m", "e_tf": "J"},
        "model": m,
        "mass_solar_display": format!("{:.4}", m.mass_solar),
    });
    Ok(Output { text, json, params, files: vec![] })
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

fn cmd_constants(k: &PhysicalConstants) -> Output {
    let text = format!(
        "physical constants ({})\n\
         alpha            = {:.12e}  (dimensionless)\n\
         Rydberg          = {:.12e}  eV\n\
         Bohr radius      = {:.12e}  m\n\
         electron mass    = {:.12e}  kg\n\
         nucleon mass     = {:.12e}  kg  ((m_p + m_n)/2)\n\
         Planck mass      = {:.12e}  kg  (sqrt(hbar c / G))\n\
         G                = {:.12e}  m^3 kg^-1 s^-2\n\
         hbar             = {:.12e}  J s\n\
         c                = {:.12e}  m/s\n\
         solar mass       = {:.12e}  kg\n",
        k.source,
        k.alpha,
        k.rydberg_ev,
        k.bohr_radius_m,
        k.electron_mass_kg,
        k.nucleon_mass_kg,
        k.planck_mass_kg,
        k.gravitational_g,
        k.hbar,
        k.c,
        k.solar_mass_kg,
    );
    Output {
        text,
        json: serde_json::to_value(k).unwrap_or(Value::Null),
        params: json!({}),
        files: vec![],
    }
}
