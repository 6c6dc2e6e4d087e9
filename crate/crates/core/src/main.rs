use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use congruent_theta::eisenstein::{
    basis_gamma0_prime_power, decompose_by_expansion, generate_basis, level_basis, spanning_set_gamma0, EisElement,
};
use congruent_theta::elliptic::{count_points_fp, count_points_fpk, Curve, CurveModP, FrobeniusData};
use congruent_theta::modular::{cusp_count, enumerate_cusps};
use congruent_theta::quadform::{representation_count, theta_series, CongruentForm};
use congruent_theta::verify::{manifest_hash, run_suite, SuiteConfig, SuiteReport, SUITES};
use congruent_theta::{Error, FourierSeries};

#[derive(Parser)]
#[command(name = "congruent-theta", about = "Eisenstein bases, congruent theta series and point-count identities")]
#[command(disable_version_flag = true)]
struct Cli {
    /// Print the version and the hash of the suite manifest.
    #[arg(short = 'V', long)]
    version: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Number of q-expansion terms (exponents below T).
    #[arg(long, global = true)]
    terms: Option<u64>,
    /// Range bound for verification suites.
    #[arg(long, global = true)]
    bound: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Cusp representatives of Gamma_0(N).
    Cusps {
        #[arg(long)]
        level: u64,
    },
    /// Labelled Eisenstein basis of level p^k, or the spanning list at 36 or 144.
    Basis {
        #[arg(long, requires = "power", conflicts_with = "level")]
        prime: Option<u64>,
        #[arg(long, requires = "prime")]
        power: Option<u32>,
        #[arg(long)]
        level: Option<u64>,
        /// Use the greedy structural generator instead of the labelled list.
        #[arg(long)]
        generate: bool,
        /// Also print cusp values.
        #[arg(long)]
        values: bool,
    },
    /// Theta series of x1^2 + x2^2 + x3^2 + x4^2 with every x_i = s mod M.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        residue: i64,
        #[arg(long)]
        modulus: u64,
    },
    /// Representation count of a congruent quadratic form.
    Repcount {
        /// 16 comma-separated Gram entries, row by row.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gram: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        residues: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u64>,
        #[arg(long)]
        n: u64,
    },
    /// Decompose a series into the level's Eisenstein basis and cusp forms.
    Decompose {
        /// Series JSON file.
        #[arg(long, required_unless_present = "theta", conflicts_with = "theta")]
        target: Option<std::path::PathBuf>,
        /// Use the theta series with residue s mod M, given as s,M.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Option<Vec<i64>>,
        #[arg(long)]
        level: u64,
    },
    /// Points on a Weierstrass curve over F_(p^k).
    CurveCount {
        /// a1,a2,a3,a4,a6
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Count over F_(p^k) directly as well (cost p^k).
        #[arg(long)]
        direct: bool,
    },
    /// Run named verification suites.
    Verify {
        /// Suite name, `appendix` for the four appendix suites, or `all`.
        #[arg(long)]
        suite: String,
    },
}

enum Failure {
    Usage(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoDecomposition { .. } | Error::RankDeficient { .. } => Failure::Negative(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{text}");
    }
}

fn cusps(cli: &Cli, level: u64) -> Outcome {
    if level == 0 {
        return Err(Failure::Usage("level must be positive".into()));
    }
    let list = enumerate_cusps(level);
    let e = cusp_count(level);
    let value = json!({
        "level": level,
        "cusps": list.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "count": e,
        "eis_dim": e - 1,
    });
    let names: Vec<String> = list.iter().map(ToString::to_string).collect();
    let text = format!("Gamma_0({level}): {e} cusps, dim E_2 = {}\n{}\n", e - 1, names.join(", "));
    emit(cli.json, value, text);
    Ok(true)
}

fn element_report(e: &EisElement, level: u64, terms: u64, values: bool) -> Result<(Value, String), Error> {
    let series = e.expansion(terms)?;
    let mut text = format!("{e}\n  {series}\n");
    let mut v = json!({"label": e.label(), "element": e.to_json(), "expansion": series.to_json()});
    if values {
        let table = e.cusp_values(level)?;
        for (c, val) in table.entries() {
            text.push_str(&format!("  at {c}: {val}\n"));
        }
        v["cusp_values"] = table.to_json();
    }
    Ok((v, text))
}

fn basis(
    cli: &Cli,
    prime: Option<u64>,
    power: Option<u32>,
    level: Option<u64>,
    generate: bool,
    values: bool,
) -> Outcome {
    let terms = cli.terms.unwrap_or(20);
    let (n, list) = match (prime, power, level) {
        (Some(p), Some(k), None) => {
            let list = if generate { generate_basis(p, k)? } else { basis_gamma0_prime_power(p, k)? };
            (p.pow(k), list)
        }
        (None, None, Some(n)) => (n, spanning_set_gamma0(n)?),
        _ => return Err(Failure::Usage("give --prime and --power, or --level".into())),
    };
    let mut items = Vec::new();
    let mut text = format!("level {n}: {} elements\n", list.len());
    for e in &list {
        let (v, t) = element_report(e, n, terms, values)?;
        items.push(v);
        text.push_str(&t);
    }
    emit(cli.json, json!({"level": n, "elements": items}), text);
    Ok(true)
}

fn theta(cli: &Cli, residue: i64, modulus: u64) -> Outcome {
    let form = CongruentForm::sum_of_four_squares(residue, modulus)?;
    let series = theta_series(&form, cli.terms.unwrap_or(30));
    let value = json!({"form": form.to_json(), "series": series.to_json()});
    emit(cli.json, value, format!("{form}\n{series}\n"));
    Ok(true)
}

fn repcount(cli: &Cli, gram: &[i64], residues: &[i64], moduli: &[u64], n: u64) -> Outcome {
    if gram.len() != 16 {
        return Err(Failure::Usage(format!("need 16 Gram entries, got {}", gram.len())));
    }
    let mut g = [[0i64; 4]; 4];
    for (i, v) in gram.iter().enumerate() {
        g[i / 4][i % 4] = *v;
    }
    let r: [i64; 4] = residues.try_into().map_err(|_| Failure::Usage("need 4 residues".into()))?;
    let m: [u64; 4] = moduli.try_into().map_err(|_| Failure::Usage("need 4 moduli".into()))?;
    let form = CongruentForm::new(g, r, m)?;
    let count = representation_count(&form, n);
    emit(cli.json, json!({"form": form.to_json(), "n": n, "count": count}), format!("{form}\nr({n}) = {count}\n"));
    Ok(true)
}

fn decompose(cli: &Cli, target: Option<&std::path::Path>, theta: Option<&[i64]>, level: u64) -> Outcome {
    let terms = cli.terms.unwrap_or(300);
    let series = match (target, theta) {
        (Some(path), None) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("bad JSON: {e}")))?;
            FourierSeries::from_json(&v)?
        }
        (None, Some(&[s, m])) => {
            let m = u64::try_from(m).map_err(|_| Failure::Usage("modulus must be positive".into()))?;
            theta_series(&CongruentForm::sum_of_four_squares(s, m)?, terms)
        }
        _ => return Err(Failure::Usage("give --target or --theta s,M".into())),
    };
    let lb = level_basis(level, terms)?;
    let forms: Vec<FourierSeries> = lb.cuspforms.iter().map(|c| c.1.clone()).collect();
    let names: Vec<String> = lb.cuspforms.iter().map(|c| c.0.clone()).collect();
    let d = decompose_by_expansion(&series, &lb.elements, &forms, terms)?;
    let mut text = format!("level {level}, coefficients below q^{terms}:\n");
    for (e, c) in lb.elements.iter().zip(&d.coeffs) {
        if !num_traits::Zero::is_zero(c) {
            text.push_str(&format!("  {} : {c}\n", e.label().unwrap_or("?")));
        }
    }
    for (name, c) in names.iter().zip(&d.cusp_coeffs) {
        if !num_traits::Zero::is_zero(c) {
            text.push_str(&format!("  {name} : {c}\n"));
        }
    }
    text.push_str(&format!("residual: {}\n", if d.residual.is_zero() { "0" } else { "nonzero" }));
    emit(cli.json, d.to_json(&lb.elements, &names), text);
    Ok(d.residual.is_zero())
}

fn curve_count(cli: &Cli, curve: &str, p: u64, k: u32, direct: bool) -> Outcome {
    let curve: Curve = curve.parse()?;
    let reduced = CurveModP::new(curve, p)?;
    if k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    let n1 = count_points_fp(&reduced);
    let frob = FrobeniusData::from_curve(&reduced);
    let nk = frob.point_count_pk(k);
    let mut value =
        json!({"curve": curve.coefficients(), "p": p, "k": k, "a_p": frob.a_p, "N_1": n1, "N_k": nk.to_string()});
    let mut text = format!("{curve} over F_{p}: N_p(1) = {n1}, a_p = {}\nN_p({k}) = {nk}\n", frob.a_p);
    let mut agree = true;
    if direct && k > 1 {
        let counted = count_points_fpk(&reduced, k)?;
        agree = counted == nk;
        value["N_k_direct"] = json!(counted.to_string());
        text.push_str(&format!("direct count over F_({p}^{k}): {counted}\n"));
    }
    emit(cli.json, value, text);
    Ok(agree)
}

fn verify(cli: &Cli, suite: &str) -> Outcome {
    let names: Vec<&str> = match suite {
        "all" => SUITES.iter().map(|s| s.name).collect(),
        "appendix" => vec!["appendix-a", "appendix-b", "appendix-c", "appendix-d"],
        one => vec![one],
    };
    let config = SuiteConfig { bound: cli.bound };
    let reports: Vec<SuiteReport> = names.iter().map(|n| run_suite(n, &config)).collect::<Result<_, _>>()?;
    let ok = reports.iter().all(SuiteReport::is_pass);
    let value = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        Value::Array(reports.iter().map(SuiteReport::to_json).collect())
    };
    emit(cli.json, value, reports.iter().map(ToString::to_string).collect());
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.version {
        println!("congruent-theta {} manifest {}", env!("CARGO_PKG_VERSION"), manifest_hash());
        return ExitCode::SUCCESS;
    }
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global().expect("pool is built once");
    }
    let Some(command) = &cli.command else {
        eprintln!("error: a subcommand is required; see --help");
        return ExitCode::from(2);
    };
    let outcome = match command {
        Command::Cusps { level } => cusps(&cli, *level),
        Command::Basis { prime, power, level, generate, values } => {
            basis(&cli, *prime, *power, *level, *generate, *values)
        }
        Command::Theta { residue, modulus } => theta(&cli, *residue, *modulus),
        Command::Repcount { gram, residues, moduli, n } => repcount(&cli, gram, residues, moduli, *n),
        Command::Decompose { target, theta, level } => decompose(&cli, target.as_deref(), theta.as_deref(), *level),
        Command::CurveCount { curve, p, k, direct } => curve_count(&cli, curve, *p, *k, *direct),
        Command::Verify { suite } => verify(&cli, suite),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
