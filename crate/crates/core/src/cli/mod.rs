//! Command-line front end.
//!
//! Commands fill a [`ReportDocument`]; the exit code is 0 when every check
//! passes, 1 on a mathematical failure and 2 on an input error.

pub mod formats;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::datum::{extract_twist_element, DynamicalDatum, MonomialHopfSpec};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::report::{Check, Report, Status};
use crate::scalar::Cyclo;
use crate::stab::{stab_hom_realized, yan_zhu_stab};
use crate::twist::{build_twisted_galois, gauge_check, verify_twist};
use formats::{
    comodule_text, hopf_text, load_comodule, load_datum, load_gauge, load_hopf, load_module,
    load_twist, sha256_ref, to_canonical, DatumFile, Loaded, ModuleFile, TwistFile,
};

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct InputRef {
    pub path: String,
    pub sha256: String,
}

/// Machine-readable record of one command run.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug, Default)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<InputRef>,
    pub checks: Vec<Check>,
    pub outputs: Vec<String>,
}

impl ReportDocument {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    fn merge(&mut self, prefix: &str, r: Report) {
        for mut c in r.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputRef {
            path: path.display().to_string(),
            sha256: sha256_ref(&bytes)[7..].to_string(),
        });
        String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{}: not UTF-8", path.display())))
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<()> {
        std::fs::write(path, text)
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dyntwist",
    version,
    about = "Exact dynamical twists for finite-dimensional Hopf algebras"
)]
pub struct Cli {
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the verifier for a file kind.
    Verify {
        kind: VerifyKind,
        /// hopf: H; comodule: H K; twist: H S J; gauge: H S J J′ t.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Emit Hopf, comodule, base, datum and T(1) module files for an instance.
    Example(ExampleArgs),
    /// Run the full pipeline on a datum file and write the twist.
    ComputeTwist {
        datum: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// File-name prefix; defaults to the datum file stem without `_datum`.
        #[arg(long)]
        prefix: Option<String>,
    },
    /// Compare the two stabilizer realizations for K-modules V and W.
    Stab {
        h: PathBuf,
        k: PathBuf,
        v: PathBuf,
        w: PathBuf,
    },
    /// Build H*⊗S with the J-twisted product and check it.
    TwistedGalois { h: PathBuf, s: PathBuf, j: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Hopf,
    Comodule,
    Twist,
    Gauge,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    #[value(name = "E0")]
    E0,
    #[value(name = "E1")]
    E1,
    #[value(name = "custom")]
    Custom,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    pub name: ExampleName,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Cyclotomic field order N.
    #[arg(long)]
    pub order: Option<u32>,
    /// Orders of the cyclic factors of G (default: n).
    #[arg(long, value_delimiter = ',')]
    pub group: Option<Vec<usize>>,
    /// Character values, one per group element (default: χ(gᵏ) = ζ_nᵏ on a cyclic group).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub chi: Option<Vec<String>>,
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Subgroup F (default: G).
    #[arg(long, value_delimiter = ',')]
    pub f: Option<Vec<usize>>,
    /// Subgroup B (default: trivial).
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<usize>>,
    /// μ with λ = μⁿ: a scalar or `zetaM`, `zetaM^e`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_root: Option<String>,
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (doc, result) = run(&cli.command);
    print!("{}", render(&doc));
    let code = match &result {
        Ok(()) if doc.all_pass() => 0,
        Ok(()) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_mathematical() {
                1
            } else {
                2
            }
        }
    };
    if let Some(path) = &cli.report {
        let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write report {}: {e}", path.display());
            return 2;
        }
    }
    code
}

fn render(doc: &ReportDocument) -> String {
    let r = Report {
        checks: doc.checks.clone(),
    };
    let mut s = r.to_string();
    for o in &doc.outputs {
        s.push_str(&format!("wrote {o}\n"));
    }
    s
}

/// Runs one command; on error the document holds everything done so far
/// plus a failing check carrying the message.
pub fn run(cmd: &Command) -> (ReportDocument, Result<()>) {
    let mut doc = ReportDocument {
        command: command_name(cmd).into(),
        ..Default::default()
    };
    let result = match cmd {
        Command::Verify { kind, files } => cmd_verify(&mut doc, *kind, files),
        Command::Example(a) => cmd_example(&mut doc, a),
        Command::ComputeTwist {
            datum,
            out_dir,
            prefix,
        } => cmd_compute_twist(&mut doc, datum, out_dir, prefix.as_deref()),
        Command::Stab { h, k, v, w } => cmd_stab(&mut doc, h, k, v, w),
        Command::TwistedGalois { h, s, j } => cmd_twisted_galois(&mut doc, h, s, j),
    };
    if let Err(e) = &result {
        doc.checks.push(Check {
            name: format!("error: {e}"),
            status: Status::Fail,
            residual_nonzero_count: 1,
        });
    }
    (doc, result)
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Verify {
            kind: VerifyKind::Hopf,
            ..
        } => "verify hopf",
        Command::Verify {
            kind: VerifyKind::Comodule,
            ..
        } => "verify comodule",
        Command::Verify {
            kind: VerifyKind::Twist,
            ..
        } => "verify twist",
        Command::Verify {
            kind: VerifyKind::Gauge,
            ..
        } => "verify gauge",
        Command::Example(_) => "example",
        Command::ComputeTwist { .. } => "compute-twist",
        Command::Stab { .. } => "stab",
        Command::TwistedGalois { .. } => "twisted-galois",
    }
}

fn read_hopf(doc: &mut ReportDocument, p: &Path) -> Result<Loaded<crate::hopf::HopfAlgebraData>> {
    let text = doc.read(p)?;
    load_hopf(&text).map_err(|e| located(p, e))
}

fn read_comodule(
    doc: &mut ReportDocument,
    p: &Path,
    h: &Loaded<crate::hopf::HopfAlgebraData>,
) -> Result<Loaded<crate::comod::ComoduleAlgebraData>> {
    let text = doc.read(p)?;
    load_comodule(&text, h).map_err(|e| located(p, e))
}

/// Prefixes input-side errors with the offending path.
fn located(p: &Path, e: Error) -> Error {
    let at = p.display();
    match e {
        Error::Parse(m) => Error::Parse(format!("{at}: {m}")),
        Error::Structural(m) => Error::Structural(format!("{at}: {m}")),
        Error::CorruptInput(m) => Error::CorruptInput(format!("{at}: {m}")),
        Error::Validation(m) => Error::Validation(format!("{at}: {m}")),
        other => other,
    }
}

fn arity(kind: &str, files: &[PathBuf], n: usize, usage: &str) -> Result<()> {
    if files.len() != n {
        return Err(Error::Precondition(format!(
            "verify {kind} takes {n} files: {usage}"
        )));
    }
    Ok(())
}

fn cmd_verify(doc: &mut ReportDocument, kind: VerifyKind, files: &[PathBuf]) -> Result<()> {
    match kind {
        VerifyKind::Hopf => {
            arity("hopf", files, 1, "H")?;
            let h = read_hopf(doc, &files[0])?;
            doc.merge("", h.value.verify());
        }
        VerifyKind::Comodule => {
            arity("comodule", files, 2, "H K")?;
            let h = read_hopf(doc, &files[0])?;
            let k = read_comodule(doc, &files[1], &h)?;
            doc.merge("", k.value.verify());
        }
        VerifyKind::Twist => {
            arity("twist", files, 3, "H S J")?;
            let h = read_hopf(doc, &files[0])?;
            let s = read_comodule(doc, &files[1], &h)?;
            let text = doc.read(&files[2])?;
            let j = load_twist(&text, &h, &s).map_err(|e| located(&files[2], e))?;
            doc.merge("", verify_twist(&j));
        }
        VerifyKind::Gauge => {
            arity("gauge", files, 5, "H S J J′ t")?;
            let h = read_hopf(doc, &files[0])?;
            let s = read_comodule(doc, &files[1], &h)?;
            let mut twists = Vec::new();
            for p in &files[2..4] {
                let text = doc.read(p)?;
                twists.push(load_twist(&text, &h, &s).map_err(|e| located(p, e))?);
            }
            let text = doc.read(&files[4])?;
            let t = load_gauge(&text, &h, &s).map_err(|e| located(&files[4], e))?;
            doc.merge("", gauge_check(&twists[0], &twists[1], &t)?);
        }
    }
    Ok(())
}

/// `zetaM` or `zetaM^e` as an element of ℚ(ζ_N), or an ordinary scalar.
fn parse_root(s: &str, order: u32) -> Result<Cyclo> {
    let Some(rest) = s.trim().strip_prefix("zeta") else {
        return Cyclo::parse(s, order);
    };
    let (m, e) = rest.split_once('^').unwrap_or((rest, "1"));
    let m: u32 = m
        .parse()
        .map_err(|_| Error::Parse(format!("malformed root of unity {s:?}")))?;
    let e: i64 = e
        .parse()
        .map_err(|_| Error::Parse(format!("malformed exponent in {s:?}")))?;
    if m == 0 || !order.is_multiple_of(m) {
        return Err(Error::Validation(format!(
            "{s} requires N divisible by {m}, but N = {order}"
        )));
    }
    Ok(Cyclo::zeta_pow(order, e * i64::from(order / m)))
}

fn root_order(s: &str) -> Option<u32> {
    s.trim()
        .strip_prefix("zeta")
        .and_then(|r| r.split('^').next())
        .and_then(|m| m.parse().ok())
}

/// Datum parameters for `example custom`.
pub fn custom_datum(a: &ExampleArgs) -> Result<DatumFile> {
    let n = a.n;
    let n32 = u32::try_from(n).map_err(|_| Error::Validation("n out of range".into()))?;
    let order = match a.order {
        Some(o) => o,
        None => {
            let mut o = n32.max(1);
            for s in a.chi.iter().flatten().chain(a.lambda_root.iter()) {
                if let Some(m) =
                    root_order(s).or_else(|| s.rsplit_once("]@").and_then(|(_, m)| m.parse().ok()))
                {
                    o = num_integer::lcm(o, m);
                }
            }
            o
        }
    };
    if order == 0 {
        return Err(Error::Validation("N must be positive".into()));
    }
    let orders = a.group.clone().unwrap_or_else(|| vec![n]);
    if orders.contains(&0) {
        return Err(Error::Validation(
            "cyclic factor orders must be positive".into(),
        ));
    }
    let group = FiniteGroup::cyclic_product(&orders);
    let chi = match &a.chi {
        Some(c) => c
            .iter()
            .map(|s| parse_root(s, order))
            .collect::<Result<Vec<_>>>()?,
        None if a.group.is_none() => {
            if order % n32 != 0 {
                return Err(Error::Validation(format!(
                    "χ(g) = ζ_{n} requires N divisible by {n}, but N = {order}"
                )));
            }
            (0..n)
                .map(|k| Cyclo::zeta_pow(order, (k as i64) * i64::from(order / n32)))
                .collect()
        }
        None => return Err(Error::Validation("--chi is required with --group".into())),
    };
    let mu = match &a.lambda_root {
        Some(s) => parse_root(s, order)?,
        None => Cyclo::one(order),
    };
    let spec = MonomialHopfSpec {
        group,
        chi,
        g: a.g.unwrap_or(1.min(orders.iter().product::<usize>() - 1)),
        n,
    };
    let f =
        a.f.clone()
            .unwrap_or_else(|| (0..spec.group.order()).collect());
    let b = a.b.clone().unwrap_or_else(|| vec![spec.group.identity()]);
    Ok(DatumFile::from_spec("custom", &spec, &f, &b, &mu))
}

fn cmd_example(doc: &mut ReportDocument, a: &ExampleArgs) -> Result<()> {
    let (prefix, datum) = match a.name {
        ExampleName::E0 => ("e0", DynamicalDatum::e0()?),
        ExampleName::E1 => ("e1", DynamicalDatum::e1()?),
        ExampleName::Custom => ("custom", custom_datum(a)?.to_datum()?),
    };
    let m = datum.monomial.as_ref().expect("examples are monomial");
    let file = DatumFile::from_spec(&datum.name, &m.spec, &m.script_a.f, &m.b, &m.script_a.mu);
    doc.merge("hopf: ", datum.h.verify());
    doc.merge("comodule: ", datum.k.verify());
    doc.merge("", datum.validate()?);
    std::fs::create_dir_all(&a.out_dir)
        .map_err(|e| Error::Precondition(format!("cannot create {}: {e}", a.out_dir.display())))?;
    let htext = hopf_text(&datum.h);
    let href = sha256_ref(htext.as_bytes());
    doc.write(&a.out_dir.join(format!("{prefix}_hopf.json")), &htext)?;
    doc.write(
        &a.out_dir.join(format!("{prefix}_comodule.json")),
        &comodule_text(&datum.k, &href),
    )?;
    doc.write(
        &a.out_dir.join(format!("{prefix}_base.json")),
        &comodule_text(datum.base_comodule(), &href),
    )?;
    doc.write(
        &a.out_dir.join(format!("{prefix}_datum.json")),
        &to_canonical(&file),
    )?;
    let kref = sha256_ref(comodule_text(&datum.k, &href).as_bytes());
    let t1 = datum
        .functor
        .apply(&crate::rep::ModuleRep::trivial(datum.base.small()))?;
    doc.write(
        &a.out_dir.join(format!("{prefix}_t1.json")),
        &to_canonical(&ModuleFile::from_module(&t1, &kref)),
    )?;
    Ok(())
}

fn cmd_compute_twist(
    doc: &mut ReportDocument,
    path: &Path,
    out_dir: &Path,
    prefix: Option<&str>,
) -> Result<()> {
    let text = doc.read(path)?;
    let datum = load_datum(&text)
        .and_then(|f| f.to_datum())
        .map_err(|e| located(path, e))?;
    let v = datum.validate()?;
    let ok = v.all_pass();
    doc.merge("", v);
    if !ok {
        return Err(Error::Hypothesis(
            "the datum does not validate; pipeline not run".into(),
        ));
    }
    let ex = extract_twist_element(&datum)?;
    doc.merge("", ex.report);

    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("datum");
    let prefix = prefix.unwrap_or_else(|| stem.strip_suffix("_datum").unwrap_or(stem));
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::Precondition(format!("cannot create {}: {e}", out_dir.display())))?;
    let htext = hopf_text(&datum.h);
    let href = sha256_ref(htext.as_bytes());
    let stext = comodule_text(datum.base_comodule(), &href);
    let sref = sha256_ref(stext.as_bytes());
    let jtext = to_canonical(&TwistFile::from_twist(&ex.twist, &href, &sref));
    let (hp, sp, jp) = (
        out_dir.join(format!("{prefix}_hopf.json")),
        out_dir.join(format!("{prefix}_base.json")),
        out_dir.join(format!("{prefix}_twist.json")),
    );
    doc.write(&hp, &htext)?;
    doc.write(&sp, &stext)?;
    doc.write(&jp, &jtext)?;

    // independent re-verification from the written files
    let mut again = ReportDocument::default();
    cmd_verify(&mut again, VerifyKind::Twist, &[hp, sp, jp])?;
    doc.merge(
        "re-verify: ",
        Report {
            checks: again.checks,
        },
    );
    Ok(())
}

fn cmd_stab(doc: &mut ReportDocument, hp: &Path, kp: &Path, vp: &Path, wp: &Path) -> Result<()> {
    let h = read_hopf(doc, hp)?;
    let k = read_comodule(doc, kp, &h)?;
    let mut modules = Vec::new();
    for p in [vp, wp] {
        let text = doc.read(p)?;
        modules.push(load_module(&text, k.value.alg(), &k.reference).map_err(|e| located(p, e))?);
    }
    let (v, w) = (&modules[0], &modules[1]);
    doc.merge("V: ", v.verify());
    doc.merge("W: ", w.verify());
    let (yz, r) = yan_zhu_stab(&k.value, v, w)?;
    doc.merge("", r);
    let hom = stab_hom_realized(&k.value, v, w)?;
    if let Some(m) = &hom.h_action {
        doc.merge("stabilizer H-action: ", m.verify());
    }
    let simple = k.value.is_h_simple()?.verdict == crate::comod::Verdict::SimpleCertified;
    let mut r = Report::new();
    r.flag(
        format!(
            "stab: realizations agree in dimension ({} = {})",
            yz.dim(),
            hom.dim()
        ),
        yz.dim() == hom.dim(),
    );
    if simple {
        let (lhs, rhs) = (k.value.dim() * hom.dim(), v.dim() * w.dim() * h.value.dim());
        r.flag(
            format!("stab: dim K·dim St = dim V·dim W·dim H ({lhs} = {rhs})"),
            lhs == rhs,
        );
    } else {
        r.inconclusive("stab: dimension formula (K not certified H-simple)");
    }
    doc.merge("", r);
    Ok(())
}

fn cmd_twisted_galois(doc: &mut ReportDocument, hp: &Path, sp: &Path, jp: &Path) -> Result<()> {
    let h = read_hopf(doc, hp)?;
    let s = read_comodule(doc, sp, &h)?;
    let text = doc.read(jp)?;
    let j = load_twist(&text, &h, &s).map_err(|e| located(jp, e))?;
    let tg = build_twisted_galois(&j)?;
    doc.merge("", tg.report);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> ExampleArgs {
        let mut v = vec!["dyntwist", "example"];
        v.extend_from_slice(extra);
        match Cli::try_parse_from(v).unwrap().command {
            Command::Example(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn zeta_root_requires_divisible_order() {
        let err = custom_datum(&args(&[
            "custom",
            "--n",
            "3",
            "--lambda-root",
            "zeta3",
            "--order",
            "2",
        ]))
        .unwrap_err();
        assert!(err.to_string().contains("divisible by 3"), "{err}");
        let ok = custom_datum(&args(&["custom", "--n", "3", "--lambda-root", "zeta3"])).unwrap();
        assert_eq!(ok.order, Some(3));
        assert_eq!(ok.mu, "[0,1]@3");
    }

    #[test]
    fn custom_defaults_give_a_taft_datum() {
        let f = custom_datum(&args(&["custom", "--n", "3"])).unwrap();
        let d = f.to_datum().unwrap();
        assert_eq!(d.h.dim(), 9);
    }

    #[test]
    fn bad_n_names_the_condition() {
        let err = custom_datum(&args(&[
            "custom",
            "--group",
            "4",
            "--chi",
            "1,-1,1,-1",
            "--g",
            "1",
            "--n",
            "2",
        ]))
        .and_then(|f| f.to_datum())
        .unwrap_err();
        assert!(err.to_string().contains("n = |g| = |χ(g)|"), "{err}");
    }
}
