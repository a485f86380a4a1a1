//! Command-line front end for `gammaforms-core`: argument handling, text,
//! JSON and TSV output, the static SVG drawing of the Γ₀(p) region and the
//! table of worked examples.
//!
//! Exit codes: 0 success, 1 internal error or failed check, 2 invalid
//! input, 3 unsupported level, 4 search bound exceeded. Errors are reported
//! as a single line `error: <kind>: <message>` on stderr.

pub mod cli;
pub mod json;
pub mod svg;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::Parser;
use gammaforms_core::classgroup::{class_group_with_limit, verify_iso_with_limit, SearchLimit};
use gammaforms_core::forms::{Discriminant, Form, GammaLevel};
use gammaforms_core::fundomain::{elliptic_data, r_gamma0p_boundary, sym_inverse};
use gammaforms_core::genus::{find_representations, genus_table, PrimeClass};
use gammaforms_core::ideal::check_composition;
use gammaforms_core::reduction::{class_reps_any_level, enumerate_reduced, equivalent_gamma0, reduce_gamma0, reduce_sl2};
use gammaforms_core::Error;
use num_bigint::BigInt;

use cli::{Cli, Command, Format};
use json::*;

pub const ENV_MAX_SEARCH: &str = "GAMMA_FORMS_MAX_SEARCH";

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
    /// A check ran and came out false.
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::UnsupportedLevel(_)) => 3,
            Failure::Core(Error::SearchBoundExceeded { .. }) => 4,
            Failure::Core(Error::Invariant(_)) | Failure::Io(_) | Failure::Check(_) => 1,
            Failure::Core(_) | Failure::Usage(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "invalid-input",
            3 => "unsupported-level",
            4 => "search-bound",
            _ => "failed",
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(m) | Failure::Check(m) => f.write_str(m),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out<'a> = &'a mut dyn Write;
type CmdResult = Result<(), Failure>;

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            let msg = f.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {}: {}", f.kind(), msg);
            f.exit_code()
        }
    }
}

fn search_limit() -> Result<SearchLimit, Failure> {
    match std::env::var(ENV_MAX_SEARCH) {
        Ok(v) => match BigInt::from_str(v.trim()) {
            Ok(n) if n > BigInt::from(0) => Ok(SearchLimit::Max(n)),
            _ => Err(Failure::Usage(format!("{ENV_MAX_SEARCH} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(SearchLimit::Default),
    }
}

fn parse_disc(s: &str) -> Result<Discriminant, Failure> {
    let n = BigInt::from_str(s.trim()).map_err(|_| Failure::Usage(format!("discriminant {s:?} is not an integer")))?;
    Ok(Discriminant::new(n)?)
}

fn parse_level(s: &str) -> Result<GammaLevel, Failure> {
    let n = u64::from_str(s.trim()).map_err(|_| Failure::Usage(format!("level {s:?} is not a positive integer")))?;
    Ok(GammaLevel::new(n)?)
}

fn parse_form(s: &str) -> Result<Form, Failure> {
    let q = Form::from_str(s)?;
    q.check_primitive_positive()?;
    Ok(q)
}

fn parse_int<T: FromStr>(s: &str, what: &str) -> Result<T, Failure> {
    T::from_str(s.trim()).map_err(|_| Failure::Usage(format!("{what} {s:?} is not a valid integer")))
}

fn print_json<T: serde::Serialize>(out: Out, v: &T) -> CmdResult {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Check(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn entry(q: &Form, with_class: bool) -> Result<ReducedEntry, Failure> {
    let d = q.discriminant();
    let sl2_class = if with_class { Some(FormJson::from(&reduce_sl2(q)?.reduced)) } else { None };
    Ok(ReducedEntry {
        form: q.into(),
        cm_point: [Int(-q.b.clone()), Int(d), Int(BigInt::from(2) * &q.a)],
        sl2_class,
    })
}

fn cm_text(q: &Form) -> String {
    format!("(-({}) + sqrt({}))/({})", q.b, q.discriminant(), BigInt::from(2) * &q.a)
}

fn dispatch(cmd: Command, out: Out) -> CmdResult {
    match cmd {
        Command::Reduce { disc, level, form, json } => reduce(disc.as_deref(), &level, form.as_deref(), json, out),
        Command::Enumerate { disc, level, format, json } => {
            enumerate(&disc, &level, if json { Format::Json } else { format }, out)
        }
        Command::Equiv { form1, form2, level, json } => equiv(&form1, &form2, &level, json, out),
        Command::Classgroup { disc, level, table, json } => classgroup(&disc, &level, table, json, out),
        Command::VerifyIso { disc, level, oracle, json } => verify_iso(&disc, &level, oracle, json, out),
        Command::Genus { disc, level, json } => genus(&disc, &level, json, out),
        Command::Classify { prime, disc, level, text } => classify(&prime, &disc, &level, text, out),
        Command::Represent { form, value, level, json } => represent(&form, &value, &level, json, out),
        Command::Fundomain { p, svg } => fundomain(&p, svg.as_deref(), out),
        Command::PaperTables { table, list } => paper_tables(table.as_deref(), list, out),
    }
}

fn reduce(disc: Option<&str>, level: &str, form: Option<&str>, json: bool, out: Out) -> CmdResult {
    let level = parse_level(level)?;
    let disc = disc.map(parse_disc).transpose()?;
    match form {
        Some(s) => {
            let q = parse_form(s)?;
            if let Some(d) = &disc {
                if q.discriminant() != *d.value() {
                    return Err(Error::DiscriminantMismatch(q.discriminant(), d.value().clone()).into());
                }
            }
            let r = reduce_gamma0(&q, level)?;
            if json {
                print_json(
                    out,
                    &Reduction { input: (&q).into(), level: level.get(), reduced: (&r.reduced).into(), transform: (&r.transform).into() },
                )
            } else {
                writeln!(out, "{} -> {} via {}", q, r.reduced, r.transform)?;
                Ok(())
            }
        }
        None => {
            let d = disc.ok_or_else(|| Failure::Usage("reduce needs --disc or --form".into()))?;
            let reps = class_reps_any_level(&d, level)?;
            if json {
                let forms = reps.iter().map(|q| entry(q, true)).collect::<Result<_, _>>()?;
                print_json(out, &FormList { disc: d.value().into(), level: level.get(), forms })
            } else {
                for q in &reps {
                    writeln!(out, "{}\tSL2 class {}", q, reduce_sl2(q)?.reduced)?;
                }
                Ok(())
            }
        }
    }
}

fn enumerate(disc: &str, level: &str, format: Format, out: Out) -> CmdResult {
    let d = parse_disc(disc)?;
    let level = parse_level(level)?;
    let forms = enumerate_reduced(&d, level)?;
    match format {
        Format::Json => {
            let forms = forms.iter().map(|q| entry(q, false)).collect::<Result<_, _>>()?;
            print_json(out, &FormList { disc: d.value().into(), level: level.get(), forms })
        }
        Format::Tsv => {
            for q in &forms {
                writeln!(out, "{}\t{}\t{}", q.a, q.b, q.c)?;
            }
            Ok(())
        }
        Format::Text => {
            for q in &forms {
                writeln!(out, "{}\t{}\t{}", q, q.polynomial(), cm_text(q))?;
            }
            Ok(())
        }
    }
}

fn equiv(form1: &str, form2: &str, level: &str, json: bool, out: Out) -> CmdResult {
    let q1 = parse_form(form1)?;
    let q2 = parse_form(form2)?;
    let level = parse_level(level)?;
    let g = equivalent_gamma0(&q1, &q2, level)?;
    if json {
        print_json(
            out,
            &Equivalence {
                form1: (&q1).into(),
                form2: (&q2).into(),
                level: level.get(),
                equivalent: g.is_some(),
                transform: g.as_ref().map(MatrixJson::from),
            },
        )
    } else {
        match g {
            Some(g) => writeln!(out, "equivalent: true; transform: {g}")?,
            None => writeln!(out, "equivalent: false")?,
        }
        Ok(())
    }
}

fn classgroup(disc: &str, level: &str, table: bool, json: bool, out: Out) -> CmdResult {
    let d = parse_disc(disc)?;
    let level = parse_level(level)?;
    let g = class_group_with_limit(&d, level, &search_limit()?)?;
    if json {
        return print_json(
            out,
            &ClassGroupJson {
                disc: d.value().into(),
                level: level.get(),
                order: g.order(),
                invariant_factors: g.invariant_factors.clone(),
                elements: g.elements.iter().map(|e| FormJson::from(&e.rep)).collect(),
                table: table.then(|| g.cayley.clone()),
            },
        );
    }
    writeln!(out, "order: {}; invariant_factors: {:?}", g.order(), g.invariant_factors)?;
    for (i, e) in g.elements.iter().enumerate() {
        writeln!(out, "{i}\t{}\torder {}", e.rep, g.element_order(i))?;
    }
    if table {
        for row in &g.cayley {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", cells.join("\t"))?;
        }
    }
    Ok(())
}

fn verify_iso(disc: &str, level: &str, oracle: bool, json: bool, out: Out) -> CmdResult {
    let d = parse_disc(disc)?;
    let level = parse_level(level)?;
    let limit = search_limit()?;
    let r = verify_iso_with_limit(&d, level, &limit)?;
    let oracle = if oracle {
        let g = class_group_with_limit(&d, level, &limit)?;
        let rep = check_composition(&g, &limit)?;
        Some(OracleJson { pairs: rep.pairs, mismatches: rep.mismatches.iter().map(|&(i, j)| [i, j]).collect() })
    } else {
        None
    };
    let ok = r.isomorphic && oracle.as_ref().map_or(true, |o| o.mismatches.is_empty());
    if json {
        print_json(
            out,
            &IsoJson {
                disc: (&r.disc).into(),
                level: r.level,
                scaled_disc: (&r.scaled_disc).into(),
                isomorphic: r.isomorphic,
                invariant_factors: r.lhs_invariants.clone(),
                scaled_invariant_factors: r.rhs_invariants.clone(),
                oracle: oracle.clone(),
            },
        )?;
    } else {
        writeln!(out, "isomorphic: {}; invariant_factors: {:?}", r.isomorphic, r.lhs_invariants)?;
        if !r.isomorphic {
            writeln!(out, "scaled discriminant {}: invariant_factors: {:?}", r.scaled_disc, r.rhs_invariants)?;
        }
        if let Some(o) = &oracle {
            writeln!(out, "oracle: {} pairs, {} mismatches", o.pairs, o.mismatches.len())?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(format!("class groups of {} at level {} and of {} differ", r.disc, r.level, r.scaled_disc)))
    }
}

fn genus(disc: &str, level: &str, json: bool, out: Out) -> CmdResult {
    let d = parse_disc(disc)?;
    let level = parse_level(level)?;
    let t = genus_table(&d, level)?;
    if json {
        let genera = t
            .cosets
            .iter()
            .enumerate()
            .map(|(i, c)| GenusEntry { coset: ints(c), forms: t.genus(i).into_iter().map(FormJson::from).collect() })
            .collect();
        return print_json(
            out,
            &GenusJson {
                disc: d.value().into(),
                level: level.get(),
                modulus: (&t.modulus).into(),
                ker_chi: ints(&t.ker_chi),
                h: ints(&t.h),
                genera,
            },
        );
    }
    let list = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    writeln!(out, "modulus: {}", t.modulus)?;
    writeln!(out, "ker(chi): {{{}}}", list(&t.ker_chi))?;
    writeln!(out, "H: {{{}}}", list(&t.h))?;
    for (i, c) in t.cosets.iter().enumerate() {
        let forms: Vec<String> = t.genus(i).iter().map(|q| q.polynomial()).collect();
        writeln!(out, "genus {i}: {{{}}}: {}", list(c), forms.join(", "))?;
    }
    Ok(())
}

fn classify(prime: &str, disc: &str, level: &str, text: bool, out: Out) -> CmdResult {
    let p: u64 = parse_int(prime, "prime")?;
    let d = parse_disc(disc)?;
    let level = parse_level(level)?;
    let table = genus_table(&d, level)?;
    let result = table.classify(p)?;
    let mut j = ClassifyJson::default();
    match &result {
        PrimeClass::Genus { coset, witness, rep } => {
            j.coset = Some(ints(&table.cosets[*coset]));
            j.witness = Some(witness.to_string());
            j.x = Some((&rep.x).into());
            j.y = Some((&rep.y).into());
        }
        PrimeClass::NotRepresented { kronecker } => j.kronecker = Some(*kronecker),
        PrimeClass::OutsideGenera { witness } => {
            j.outside_genera = Some(true);
            if let Some((q, r)) = witness {
                j.witness = Some(q.to_string());
                j.x = Some((&r.x).into());
                j.y = Some((&r.y).into());
            }
        }
    }
    if !text {
        writeln!(out, "{}", serde_json::to_string(&j).map_err(|e| Failure::Check(e.to_string()))?)?;
        return Ok(());
    }
    match &result {
        PrimeClass::Genus { witness, rep, .. } => {
            let c: Vec<String> = j.coset.iter().flatten().map(ToString::to_string).collect();
            writeln!(out, "{p} lies in the coset {{{}}}; {p} = Q({}, {}) with Q = {}", c.join(", "), rep.x, rep.y, witness.polynomial())?;
        }
        PrimeClass::NotRepresented { kronecker } => {
            writeln!(out, "({}/{p}) = {kronecker}: {p} is not represented by any form of discriminant {}", d, d)?
        }
        PrimeClass::OutsideGenera { witness } => match witness {
            Some((q, r)) => writeln!(out, "{p} divides N; {p} = Q({}, {}) with Q = {}, which lies in no genus", r.x, r.y, q.polynomial())?,
            None => writeln!(out, "{p} divides N and is not N-represented")?,
        },
    }
    Ok(())
}

fn represent(form: &str, value: &str, level: &str, json: bool, out: Out) -> CmdResult {
    let q = parse_form(form)?;
    let m: BigInt = parse_int(value, "value")?;
    let level = parse_level(level)?;
    let reps: Vec<_> = find_representations(&q, &m, level)?.into_iter().filter(|r| r.admissible).collect();
    if json {
        return print_json(
            out,
            &RepresentJson {
                form: (&q).into(),
                value: (&m).into(),
                level: level.get(),
                representations: reps
                    .iter()
                    .map(|r| RepresentationJson { x: (&r.x).into(), y: (&r.y).into(), proper: r.proper })
                    .collect(),
            },
        );
    }
    if reps.is_empty() {
        writeln!(out, "{m} is not {}-represented by {}", level.get(), q.polynomial())?;
    }
    for r in &reps {
        writeln!(out, "{}\t{}\t{}", r.x, r.y, if r.proper { "proper" } else { "improper" })?;
    }
    Ok(())
}

fn fundomain(p: &str, svg_path: Option<&std::path::Path>, out: Out) -> CmdResult {
    let p: i64 = parse_int(p, "p")?;
    let b = r_gamma0p_boundary(p)?;
    let data = elliptic_data(p)?;
    let arcs = b
        .arcs
        .iter()
        .map(|a| {
            Ok(ArcJson {
                k: a.k,
                center: a.center.to_string(),
                radius: a.radius.to_string(),
                from_re: a.from_re.to_string(),
                to_re: a.to_re.to_string(),
                paired_with: -sym_inverse(p, a.k)?,
            })
        })
        .collect::<Result<_, Error>>()?;
    let inv = FundomainJson { p, lines: b.lines.iter().map(ToString::to_string).collect(), arcs, e2: data.e2.clone(), e3: data.e3.clone() };
    if let Some(path) = svg_path {
        std::fs::write(path, svg::render(&b))?;
    }
    print_json(out, &inv)
}

fn paper_tables(name: Option<&str>, list: bool, out: Out) -> CmdResult {
    if list {
        for t in &tables::TABLES {
            writeln!(out, "{}\t{}", t.name, t.title)?;
        }
        return Ok(());
    }
    if let Some(name) = name {
        let t = tables::find(name).ok_or_else(|| Failure::Usage(format!("no table named {name:?}; see --list")))?;
        let r = t.run()?;
        writeln!(out, "{}: {{{}}}", r.title, r.got.join(", "))?;
        return if r.matches() {
            writeln!(out, "match")?;
            Ok(())
        } else {
            Err(Failure::Check(format!("table {} differs: expected {{{}}}", r.name, r.expected.join(", "))))
        };
    }
    let mut bad = Vec::new();
    for t in &tables::TABLES {
        let r = t.run()?;
        if r.matches() {
            writeln!(out, "{}: match", r.name)?;
        } else {
            writeln!(out, "{}: MISMATCH got {{{}}} expected {{{}}}", r.name, r.got.join(", "), r.expected.join(", "))?;
            bad.push(r.name);
        }
    }
    let n = tables::TABLES.len();
    writeln!(out, "{}/{} tables match", n - bad.len(), n)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("mismatched tables: {}", bad.join(", "))))
    }
}
