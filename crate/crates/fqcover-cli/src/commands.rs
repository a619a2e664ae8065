//! Subcommand implementations.
//!
//! Exit codes: 0 on success, 1 when a checked property is violated (a
//! counterexample turned up, or a constructed object failed its own
//! verification), 2 on usage errors — bad flags, unreadable or malformed
//! input, or work that would exceed `--cap`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use fqcover::{
    build_sharp_system, conjecture_search, count_irreducible_order, degree_threshold,
    irreducibles_of_degree, is_irreducible, large_n_threshold_check, max_coverage_upper,
    normalize_system, theorem_exhaustive_check, uncovered_lower_bound, verify_sharp,
    BoundInstance, CongruenceSystem, Error, FieldDesc, Poly, DEFAULT_CLASS_CAP,
};
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::covfile;

#[derive(Debug, Parser)]
#[command(
    name = "fqcover",
    version,
    about = "Covering systems of polynomial congruences over finite fields",
    long_about = "Parse, build, and check systems of polynomial congruences over F_q: \
                  exact coverage decisions, sharp near-covering constructions, \
                  lower-bound tables, and exhaustive theorem verification."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check what a system covers: degree-truncated report and exact global decision.
    Check {
        /// Input system in `.cov` format.
        #[arg(long)]
        file: PathBuf,
        /// Also report coverage over the polynomials of degree below this bound.
        #[arg(long)]
        below: Option<usize>,
        /// Largest enumeration an exhaustive check may attempt.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: u64,
        /// Emit `key,value` CSV instead of the plain report.
        #[arg(long)]
        csv: bool,
    },
    /// Build the n-congruence system whose uncovered set is exactly one chosen class.
    Sharp {
        /// Number of congruences; also the degree bound of the census.
        #[arg(long)]
        n: usize,
        /// The unique polynomial of degree < n to leave uncovered, e.g. "x^3+x".
        #[arg(long)]
        target: String,
        /// Field order; the construction exists over F_2 only.
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Output path (default `sharp-n<N>.cov`).
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Lower-bound table for how many low-degree polynomials escape every congruence.
    Bound {
        /// Input system in `.cov` format; moduli must be distinct irreducibles.
        #[arg(long)]
        file: PathBuf,
        /// Count polynomials of degree below this bound.
        #[arg(long)]
        n: usize,
        /// Emit the table as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// List or count monic irreducible polynomials.
    Irr {
        /// Field order (any prime power).
        #[arg(long)]
        q: u64,
        /// List the irreducibles of exactly this degree.
        #[arg(long)]
        n: Option<usize>,
        /// Print a count table for every degree up to this bound.
        #[arg(long)]
        max_mod_deg: Option<u32>,
        /// Largest enumeration the listing may attempt.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: u64,
        /// Emit the output as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Rewrite a near-covering system into irreducible-modulus form.
    ///
    /// The input must cover every polynomial of degree below `--n` while
    /// missing something; the output system keeps both properties, uses
    /// only irreducible moduli, repeats each modulus fewer times than its
    /// degree, and comes with an explicit uncovered witness.
    Adjust {
        /// Input system in `.cov` format.
        #[arg(long)]
        file: PathBuf,
        /// Premise degree: the input must cover everything of degree below this.
        #[arg(long)]
        n: usize,
        /// Largest enumeration an exhaustive check may attempt.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: u64,
    },
    /// Exhaustively confirm that covering all low degrees forces covering everything.
    VerifyTheorem {
        /// Field order (any prime power).
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// System size; the premise covers degrees below this bound.
        #[arg(long)]
        n: usize,
        /// Largest modulus degree to enumerate.
        #[arg(long)]
        max_mod_deg: usize,
        /// Largest number of candidate systems the sweep may enumerate.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: u64,
        /// Emit the summary as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Search for systems that cover all degrees below a reduced threshold
    /// yet still miss something; any hit is written out as a `.cov` file.
    Conjecture {
        /// Field order (prime: hits are written in the text format).
        #[arg(long)]
        q: u64,
        /// System size; the premise threshold is the least T with q^T >= 2^n.
        #[arg(long)]
        n: usize,
        /// Largest modulus degree in the candidate pool.
        #[arg(long)]
        degree_budget: usize,
        /// Largest number of candidate systems the search may enumerate.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: u64,
    },
    /// Per-n table: premise thresholds, coverage ceilings, large-n inequality.
    Thresholds {
        /// Field order (any prime power).
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Tabulate every system size from 1 up to this bound.
        #[arg(long)]
        n: usize,
        /// Emit the table as CSV.
        #[arg(long)]
        csv: bool,
    },
}

/// Entry point used by `main`; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Check { file, below, cap, csv } => check(&file, below, cap, csv),
        Command::Sharp { n, target, q, file } => sharp(n, &target, q, file),
        Command::Bound { file, n, csv } => bound(&file, n, csv),
        Command::Irr { q, n, max_mod_deg, cap, csv } => irr(q, n, max_mod_deg, cap, csv),
        Command::Adjust { file, n, cap } => adjust(&file, n, cap),
        Command::VerifyTheorem { q, n, max_mod_deg, cap, csv } => {
            verify_theorem(q, n, max_mod_deg, cap, csv)
        }
        Command::Conjecture { q, n, degree_budget, cap } => conjecture(q, n, degree_budget, cap),
        Command::Thresholds { q, n, csv } => thresholds(q, n, csv),
    }
}

/// Print a usage-level error and return exit code 2.
fn usage_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

/// Print a property-violation notice and return exit code 1.
fn violation(msg: impl std::fmt::Display) -> i32 {
    eprintln!("property violation: {msg}");
    1
}

/// Render library errors with a hint when the cap is the limit.
fn describe(e: &Error) -> String {
    match e {
        Error::CapExceeded { .. } => format!("{e}; raise --cap to allow it"),
        _ => e.to_string(),
    }
}

fn load_system(path: &Path) -> Result<CongruenceSystem, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    covfile::parse_system(&text)
        .map_err(|e| format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.msg))
}

/// q^n as a BigUint.
fn pow_big(q: u64, n: usize) -> BigUint {
    BigUint::from(q).pow(n as u32)
}

fn check(file: &Path, below: Option<usize>, cap: u64, csv: bool) -> i32 {
    let system = match load_system(file) {
        Ok(s) => s,
        Err(msg) => return usage_error(msg),
    };
    let q = system.field().order();
    let lcm = system.lcm_of_moduli();

    let below_report = match below {
        Some(nb) => {
            if pow_big(q, nb) > BigUint::from(cap) {
                return usage_error(format!(
                    "checking below degree {nb} enumerates {q}^{nb} polynomials, above the cap {cap}; raise --cap to allow it"
                ));
            }
            match system.coverage_below(nb) {
                Ok(r) => Some((nb, r)),
                Err(e) => return usage_error(describe(&e)),
            }
        }
        None => None,
    };
    let exact = match system.covers_everything_exact(cap) {
        Ok(x) => x,
        Err(e) => return usage_error(describe(&e)),
    };

    if csv {
        let mut out = String::new();
        out.push_str("key,value\n");
        let _ = writeln!(out, "q,{q}");
        let _ = writeln!(out, "congruences,{}", system.len());
        let _ = writeln!(out, "lcm,{lcm}");
        let _ = writeln!(out, "lcm_degree,{}", lcm.degree());
        if let Some((nb, r)) = &below_report {
            let _ = writeln!(out, "below,{nb}");
            let _ = writeln!(out, "below_checked,{}", r.checked_count);
            let _ = writeln!(out, "below_covered,{}", r.covered_count);
            let _ = writeln!(out, "below_uncovered,{}", r.uncovered_count);
            let _ = writeln!(out, "below_complete,{}", r.complete);
        }
        let _ = writeln!(out, "exact_complete,{}", exact.complete);
        if let Some((rep, modulus)) = &exact.witness_class {
            let _ = writeln!(out, "witness_residue,{rep}");
            let _ = writeln!(out, "witness_modulus,{modulus}");
        }
        print!("{out}");
    } else {
        println!("system: {} congruences over F_{q}", system.len());
        println!("lcm of moduli: {lcm} (degree {})", lcm.degree());
        if let Some((nb, r)) = &below_report {
            println!("coverage below degree {nb}:");
            println!("  checked    {}", r.checked_count);
            println!("  covered    {}", r.covered_count);
            println!("  uncovered  {}", r.uncovered_count);
            println!("  complete   {}", if r.complete { "yes" } else { "no" });
            if !r.uncovered.is_empty() {
                let shown: Vec<String> = r.uncovered.iter().map(|p| p.to_string()).collect();
                println!("  first uncovered: {}", shown.join(", "));
            }
        }
        match &exact.witness_class {
            None => println!("exact check: complete — the system covers every polynomial"),
            Some((rep, modulus)) => println!(
                "exact check: incomplete — the class {rep} + ({modulus}) is entirely uncovered"
            ),
        }
    }
    0
}

fn sharp(n: usize, target_text: &str, q: u64, file: Option<PathBuf>) -> i32 {
    if q != 2 {
        return usage_error("the sharp construction is defined over F_2 only");
    }
    let field = FieldDesc::binary();
    let target = match Poly::parse(&field, target_text) {
        Ok(p) => p,
        Err(e) => return usage_error(format!("--target: {e}")),
    };
    let system = match build_sharp_system(n, &target) {
        Ok(s) => s,
        Err(e @ (Error::SharpNotUnique { .. } | Error::SharpCheckFailed { .. })) => {
            return violation(describe(&e))
        }
        Err(e) => return usage_error(describe(&e)),
    };
    if let Err(e) = verify_sharp(&system) {
        return violation(describe(&e));
    }

    let path = file.unwrap_or_else(|| PathBuf::from(format!("sharp-n{n}.cov")));
    if let Err(e) = fs::write(&path, covfile::format_system(&system.system)) {
        return usage_error(format!("{}: {e}", path.display()));
    }
    let total = BigUint::from(1u32) << n;
    println!("wrote {}: {n} congruences over F_2", path.display());
    println!(
        "witness check: covers {} of {total} polynomials of degree < {n}; sole exception {}",
        &total - 1u32,
        system.target
    );
    println!("global uncovered set: exactly the class {} + (x^{n})", system.target);
    println!("independent verification: disjointness, partition, and uncovered-set checks pass");
    0
}

fn bound(file: &Path, n: usize, csv: bool) -> i32 {
    let system = match load_system(file) {
        Ok(s) => s,
        Err(msg) => return usage_error(msg),
    };
    if system.is_empty() {
        return usage_error("the bound table needs at least one congruence");
    }
    let q = system.field().order();

    // Group the congruences: one class set per distinct modulus.
    let mut classes: BTreeMap<Poly, BTreeSet<Poly>> = BTreeMap::new();
    for c in system.congruences() {
        match is_irreducible(c.modulus()) {
            Ok(true) => {}
            Ok(false) => {
                return usage_error(format!(
                    "the bound table requires irreducible moduli; {} is not",
                    c.modulus()
                ))
            }
            Err(e) => return usage_error(describe(&e)),
        }
        classes.entry(c.modulus().clone()).or_default().insert(c.residue().clone());
    }
    let groups: Vec<(usize, u64)> =
        classes.iter().map(|(m, rs)| (m.degree(), rs.len() as u64)).collect();
    let instance = match BoundInstance::new(q, n, groups, 1) {
        Ok(i) => i,
        Err(e) => return usage_error(describe(&e)),
    };
    let t = instance.groups().len();

    let mut rows: Vec<(usize, BigRational)> = Vec::with_capacity(t);
    for s in 1..=t {
        let inst = instance.with_split(s).expect("1 <= s <= t");
        rows.push((s, uncovered_lower_bound(&inst)));
    }
    let best = rows
        .iter()
        .max_by(|a, b| a.1.cmp(&b.1))
        .expect("at least one split")
        .clone();

    if csv {
        println!("s,bound");
        for (s, b) in &rows {
            println!("{s},{b}");
        }
    } else {
        println!(
            "lower bounds on the count of polynomials of degree < {n} avoiding every class \
             (q={q}, {t} modulus groups)"
        );
        for (m, rs) in &classes {
            println!("  modulus {m} (degree {}): {} residue class(es)", m.degree(), rs.len());
        }
        println!("split table: the count is strictly greater than each bound");
        for (s, b) in &rows {
            let marker = if *s == best.0 { "  (best)" } else { "" };
            println!("  s={s}  N > {b}{marker}");
        }
        println!("best split s={}: strictly more than {} uncovered", best.0, best.1);
    }
    0
}

fn irr(q: u64, n: Option<usize>, max_mod_deg: Option<u32>, cap: u64, csv: bool) -> i32 {
    match (n, max_mod_deg) {
        (Some(_), Some(_)) => {
            usage_error("choose one of --n (list a degree) or --max-mod-deg (count table)")
        }
        (None, None) => usage_error("one of --n or --max-mod-deg is required"),
        (Some(d), None) => {
            let field = match FieldDesc::of_order(q) {
                Ok(f) => f,
                Err(e) => return usage_error(describe(&e)),
            };
            if d == 0 {
                return usage_error("--n must be at least 1");
            }
            if pow_big(q, d) > BigUint::from(cap) {
                return usage_error(format!(
                    "listing degree {d} scans {q}^{d} monic polynomials, above the cap {cap}; raise --cap to allow it"
                ));
            }
            let mut count = 0usize;
            if csv {
                println!("degree,poly");
            }
            for p in irreducibles_of_degree(&field, d) {
                count += 1;
                if csv {
                    println!("{d},{p}");
                } else {
                    println!("{p}");
                }
            }
            if !csv {
                println!("count: {count} monic irreducible(s) of degree {d} over F_{q}");
            }
            0
        }
        (None, Some(bound)) => {
            if bound == 0 {
                return usage_error("--max-mod-deg must be at least 1");
            }
            let mut cumulative = BigUint::ZERO;
            let mut rows = Vec::with_capacity(bound as usize);
            for d in 1..=bound {
                let count = match count_irreducible_order(q, d) {
                    Ok(c) => c,
                    Err(e) => return usage_error(describe(&e)),
                };
                cumulative += &count;
                rows.push((d, count, cumulative.clone()));
            }
            if csv {
                println!("degree,count,cumulative");
                for (d, c, cum) in &rows {
                    println!("{d},{c},{cum}");
                }
            } else {
                println!("monic irreducible counts over F_{q}");
                println!("  {:<8}{:<16}cumulative", "degree", "count");
                for (d, c, cum) in &rows {
                    println!("  {:<8}{:<16}{}", d, c.to_string(), cum);
                }
            }
            0
        }
    }
}

fn adjust(file: &Path, n: usize, cap: u64) -> i32 {
    let system = match load_system(file) {
        Ok(s) => s,
        Err(msg) => return usage_error(msg),
    };
    let normalized = match normalize_system(&system, n, cap) {
        Ok(out) => out,
        // A failed postcondition would contradict the covering theorem
        // itself (or expose a bug); everything else is an input problem.
        Err(e @ Error::NormalizePostcondition(_)) => return violation(describe(&e)),
        Err(e) => return usage_error(describe(&e)),
    };
    if let Err(e) = normalized.verify(cap) {
        return violation(describe(&e));
    }
    // The output is itself a valid `.cov` file, witness recorded up front.
    println!("# adjusted from {}: irreducible moduli, each repeated fewer times", file.display());
    println!("# than its degree; still covers everything of degree < {n}");
    println!("# omitted witness: {} (provably uncovered)", normalized.omitted);
    print!("{}", covfile::format_system(&normalized.system));
    0
}

fn verify_theorem(q: u64, n: usize, max_mod_deg: usize, cap: u64, csv: bool) -> i32 {
    let field = match FieldDesc::of_order(q) {
        Ok(f) => f,
        Err(e) => return usage_error(describe(&e)),
    };
    let report = match theorem_exhaustive_check(&field, n, max_mod_deg, cap) {
        Ok(r) => r,
        Err(e) => return usage_error(describe(&e)),
    };
    if csv {
        println!("q,n,max_mod_deg,threshold,enumerated,premise,counterexamples");
        println!(
            "{q},{n},{max_mod_deg},{},{},{},{}",
            report.degree_threshold,
            report.systems_enumerated,
            report.premise_count,
            report.counterexamples.len()
        );
    } else {
        println!("theorem check: q={q}, systems of {n} congruences, modulus degrees <= {max_mod_deg}");
        println!(
            "enumerated {} candidate systems; {} covered every polynomial of degree < {}",
            report.systems_enumerated, report.premise_count, report.degree_threshold
        );
        if report.counterexamples.is_empty() {
            println!("no counterexample: every premise-satisfying system covers the whole ring");
        }
    }
    if report.counterexamples.is_empty() {
        return 0;
    }
    for (i, s) in report.counterexamples.iter().enumerate() {
        println!("counterexample {}:", i + 1);
        for c in s.congruences() {
            println!("  {} mod {}", c.residue(), c.modulus());
        }
    }
    violation(format!(
        "{} premise-satisfying system(s) failed to cover the whole ring",
        report.counterexamples.len()
    ))
}

fn conjecture(q: u64, n: usize, degree_budget: usize, cap: u64) -> i32 {
    // Hits are emitted as `.cov` files, so stay within the text format's
    // prime-field domain.
    let field = match FieldDesc::prime(q) {
        Ok(f) => f,
        Err(_) => {
            return usage_error(format!(
                "{q} is not prime; counterexample files use the prime-field text format"
            ))
        }
    };
    let report = match conjecture_search(&field, n, degree_budget, cap) {
        Ok(r) => r,
        Err(e) => return usage_error(describe(&e)),
    };
    for (i, s) in report.counterexamples.iter().enumerate() {
        let path = format!("counterexample-{:03}.cov", i + 1);
        if let Err(e) = fs::write(&path, covfile::format_system(s)) {
            return usage_error(format!("{path}: {e}"));
        }
        println!("wrote {path}");
    }
    println!(
        "conjecture search: q={q}, n={n}, modulus degrees <= {degree_budget}, premise \
         threshold {}; enumerated {} systems, {} satisfied the premise, {} counterexample(s)",
        report.degree_threshold,
        report.systems_enumerated,
        report.premise_count,
        report.counterexamples.len()
    );
    if report.counterexamples.is_empty() {
        0
    } else {
        violation("the reduced premise threshold does not force full coverage here")
    }
}

fn thresholds(q: u64, n: usize, csv: bool) -> i32 {
    if n == 0 {
        return usage_error("--n must be at least 1");
    }
    if let Err(e) = FieldDesc::of_order(q) {
        return usage_error(describe(&e));
    }
    // The large-n inequality is specific to binary coverage growth, so its
    // column only appears for q = 2.
    let with_large_n = q == 2;
    let mut rows = Vec::with_capacity(n);
    for m in 1..=n {
        let threshold = degree_threshold(q, m);
        let ceiling = match max_coverage_upper(q, m) {
            Ok(c) => c,
            Err(e) => return usage_error(describe(&e)),
        };
        let large = if with_large_n {
            match large_n_threshold_check(m) {
                Ok(c) => Some(c.holds),
                Err(e) => return usage_error(describe(&e)),
            }
        } else {
            None
        };
        rows.push((m, threshold, ceiling, large));
    }
    if csv {
        if with_large_n {
            println!("n,degree_threshold,coverage_ceiling,large_n_holds");
        } else {
            println!("n,degree_threshold,coverage_ceiling");
        }
        for (m, threshold, ceiling, large) in &rows {
            match large {
                Some(holds) => println!("{m},{threshold},{ceiling},{holds}"),
                None => println!("{m},{threshold},{ceiling}"),
            }
        }
    } else {
        println!("thresholds over F_{q}");
        if with_large_n {
            println!("  {:<6}{:<20}{:<20}large-n inequality", "n", "premise threshold", "coverage ceiling");
        } else {
            println!("  {:<6}{:<20}coverage ceiling", "n", "premise threshold");
        }
        for (m, threshold, ceiling, large) in &rows {
            match large {
                Some(holds) => println!(
                    "  {:<6}{:<20}{:<20}{}",
                    m,
                    threshold,
                    ceiling.to_string(),
                    if *holds { "holds" } else { "fails" }
                ),
                None => println!("  {:<6}{:<20}{}", m, threshold, ceiling),
            }
        }
    }
    0
}
