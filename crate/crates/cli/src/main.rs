//! Command-line entry points: field construction, difference-set
//! certificates, mixed representations, norm-equation systems, norm
//! graphs, claim reproduction bundles, and certificate re-verification.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use normgraph::cert::{
    BicliqueCertFile, CertFile, DiffSetCertFile, EltRepr, FieldDescriptor, SixSolutionCertFile,
};
use normgraph::diffsets::{
    equivalence_to_singer, f_ta_mixed_reps, general_sets, mixed_rep_planar, planar_sets,
    verify_difference_set,
};
use normgraph::ng::{build_k46, ng_build};
use normgraph::normsys::{
    dc_identities, eta_character_sum, find_six_any, find_six_char2mod3, find_six_char3,
    sigma_checks, solve_3eq, solve_norm1, SixSolutionCert,
};
use normgraph::{make_extension, Elt, Error, FieldCtx, Poly, PrimePower, TowerCtx};

#[derive(Parser)]
#[command(name = "normgraph", version, about = "Singer difference sets, norm equation systems, and K_{4,6} subgraphs of projective norm graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a finite field and print its descriptor
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// comma-separated modulus coefficients, ascending
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Difference-set operations: list | verify | singer-equivalence
    Diffset {
        action: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        t: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mixed representations of a norm-one element (given as a power of
    /// the field primitive)
    Mixedrep {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        t: u32,
        #[arg(long = "A")]
        a: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Norm-equation systems: solve-norm1 | solve-3eq | find-six |
    /// sigma-check | eta-sum | dc-identities
    Normsys {
        action: String,
        #[arg(long)]
        q: u64,
        /// parameter element as a power of the field primitive
        #[arg(long = "A")]
        a: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Norm graphs: k46-build | k46-search S | free-check T S |
    /// count-k46 | degree-law
    Ng {
        action: String,
        /// numeric arguments of the action
        args: Vec<u64>,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 4)]
        t: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        budget_seconds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce documented results: f16 | no-k46-small | all
    Repro {
        name: String,
        #[arg(long)]
        budget_seconds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file
    Verify { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli.cmd);
    let elapsed = start.elapsed();
    match result {
        Ok(payload) => {
            emit("ok", payload, elapsed);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded) => 3u8,
                _ => 1,
            };
            emit("fail", json!({ "reason": e.to_string() }), elapsed);
            ExitCode::from(code)
        }
    }
}

fn emit(status: &str, payload: Value, elapsed: Duration) {
    let result = json!({
        "status": status,
        "payload": payload,
        "elapsed_ms": elapsed.as_millis() as u64,
    });
    use std::io::Write;
    let text = serde_json::to_string_pretty(&result).expect("serializable");
    // tolerate a closed pipe (e.g. downstream `head`)
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn run(cmd: &Cmd) -> anyhow::Result<Value> {
    match cmd {
        Cmd::Field { p, k, modulus, out } => {
            let modulus = modulus
                .as_ref()
                .map(|s| parse_modulus(*p, s))
                .transpose()?;
            let f = make_extension(*p, *k as usize, modulus)?;
            let payload = serde_json::to_value(FieldDescriptor::of(&f))?;
            write_out(out, &payload)?;
            Ok(payload)
        }
        Cmd::Diffset { action, q, t, out } => cmd_diffset(action, *q, *t, out),
        Cmd::Mixedrep { q, t, a, out } => cmd_mixedrep(*q, *t, *a, out),
        Cmd::Normsys { action, q, a, out } => cmd_normsys(action, *q, *a, out),
        Cmd::Ng { action, args, q, t, seed, budget_seconds, out } => {
            cmd_ng(action, args, *q, *t, *seed, *budget_seconds, out)
        }
        Cmd::Repro { name, budget_seconds, out } => cmd_repro(name, *budget_seconds, out),
        Cmd::Verify { file } => {
            let text = fs::read_to_string(file)?;
            let cert = CertFile::from_json(&text)?;
            cert.verify()?;
            Ok(json!({ "verified": true }))
        }
    }
}

fn parse_modulus(p: u64, s: &str) -> anyhow::Result<Poly> {
    let coeffs: Vec<u64> = s
        .split(',')
        .map(|c| c.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()?;
    Ok(Poly::new(p, coeffs))
}

fn write_out(out: &Option<PathBuf>, payload: &Value) -> anyhow::Result<()> {
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(payload)?)?;
    }
    Ok(())
}

fn elt_json(f: &FieldCtx, e: &Elt) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(EltRepr::of(f, e)?)?)
}

fn cmd_diffset(action: &str, q: u64, t: u32, out: &Option<PathBuf>) -> anyhow::Result<Value> {
    let tc = TowerCtx::for_q_t(q, t)?;
    let group = tc.norm_one_group()?;
    match action {
        "list" => {
            let payload = if t == 3 {
                let pair = planar_sets(&tc, &group)?;
                json!({
                    "q": q, "t": t,
                    "h1": powers_of(&group, &pair.h1),
                    "h2": powers_of(&group, &pair.h2),
                })
            } else {
                let sets = general_sets(&tc, &group)?;
                json!({
                    "q": q, "t": t,
                    "dt": powers_of(&group, &sets.dt),
                })
            };
            write_out(out, &payload)?;
            Ok(payload)
        }
        "verify" => {
            let (set, lambda) = if t == 3 {
                (planar_sets(&tc, &group)?.h1, 1)
            } else {
                let lambda = (pow(q, t - 2) - 1) / (q - 1);
                (general_sets(&tc, &group)?.dt, lambda)
            };
            let cert = verify_difference_set(&tc, &group, &set, lambda)?;
            if !cert.ok {
                anyhow::bail!(Error::VerificationFailed("difference-set property"));
            }
            let file = DiffSetCertFile::build(&tc, &set, lambda, cert.ok)?;
            let payload = serde_json::to_value(CertFile::DiffSet(file))?;
            write_out(out, &payload)?;
            Ok(payload)
        }
        "singer-equivalence" => {
            equivalence_to_singer(&tc, &group)?;
            let payload = json!({ "q": q, "t": t, "equivalent": true });
            write_out(out, &payload)?;
            Ok(payload)
        }
        other => anyhow::bail!("unknown diffset action: {other}"),
    }
}

fn powers_of(group: &normgraph::NormOneGroup, set: &[Elt]) -> Vec<u64> {
    set.iter()
        .map(|e| group.index_of(e).expect("member of the group"))
        .collect()
}

fn cmd_mixedrep(q: u64, t: u32, a_power: u64, out: &Option<PathBuf>) -> anyhow::Result<Value> {
    let tc = TowerCtx::for_q_t(q, t)?;
    let f = tc.field();
    let a = f.pow(&f.primitive(), a_power);
    let payload = if t == 3 {
        let (a1, a2) = mixed_rep_planar(&tc, &a)?;
        json!({
            "q": q, "t": t, "a": elt_json(f, &a)?,
            "h1_factor": elt_json(f, &a1)?,
            "h2_factor": elt_json(f, &a2)?,
        })
    } else {
        let group = tc.norm_one_group()?;
        let sets = general_sets(&tc, &group)?;
        let pairs = f_ta_mixed_reps(&tc, &sets, &a)?;
        let reps: Vec<Value> = pairs
            .iter()
            .map(|(b, c)| Ok(json!([elt_json(f, b)?, elt_json(f, c)?])))
            .collect::<anyhow::Result<_>>()?;
        json!({ "q": q, "t": t, "a": elt_json(f, &a)?, "representations": reps })
    };
    write_out(out, &payload)?;
    Ok(payload)
}

fn find_six_auto(tc: &TowerCtx) -> normgraph::Result<(&'static str, SixSolutionCert)> {
    if tc.q() % 3 == 2 && tc.q() > 2 {
        Ok(("char2mod3", find_six_char2mod3(tc)?))
    } else if tc.p() == 3 && tc.q() >= 9 {
        Ok(("char3", find_six_char3(tc)?))
    } else {
        Ok(("scan", find_six_any(tc)?))
    }
}

fn cmd_normsys(
    action: &str,
    q: u64,
    a_power: Option<u64>,
    out: &Option<PathBuf>,
) -> anyhow::Result<Value> {
    let tc = TowerCtx::for_q_t(q, 3)?;
    let f = tc.field();
    let elt_arg = |missing: &str| -> anyhow::Result<Elt> {
        let k = a_power.ok_or_else(|| anyhow::anyhow!("{missing} requires --A"))?;
        Ok(f.pow(&f.primitive(), k))
    };
    let payload = match action {
        "solve-norm1" => {
            let sols = solve_norm1(&tc)?;
            json!({
                "q": q,
                "count": sols.len(),
                "solutions": sols.iter().map(|y| elt_json(f, y)).collect::<anyhow::Result<Vec<_>>>()?,
            })
        }
        "solve-3eq" => {
            let a = elt_arg("solve-3eq")?;
            let sols = solve_3eq(&tc, &a)?;
            json!({
                "q": q, "a": elt_json(f, &a)?,
                "count": sols.len(),
                "solutions": sols.iter().map(|y| elt_json(f, y)).collect::<anyhow::Result<Vec<_>>>()?,
            })
        }
        "find-six" => {
            let (method, cert) = find_six_auto(&tc)?;
            let file = SixSolutionCertFile::build(&tc, &cert)?;
            let mut payload = serde_json::to_value(CertFile::SixSolution(file))?;
            payload["method"] = json!(method);
            payload
        }
        "sigma-check" => {
            let rep = sigma_checks(&tc)?;
            if !rep.ok {
                anyhow::bail!(Error::IdentityViolated("sigma sums"));
            }
            json!({
                "q": q, "ok": rep.ok,
                "sigma_group": elt_json(f, &rep.sigma_group)?,
                "sigma_group_non_identity": elt_json(f, &rep.sigma_group_non_identity)?,
            })
        }
        "eta-sum" => {
            let sum = eta_character_sum(PrimePower::from_q(q)?)?;
            json!({ "q": q, "eta_sum": sum })
        }
        "dc-identities" => {
            let c = elt_arg("dc-identities")?;
            let rep = dc_identities(&tc, &c)?;
            json!({
                "q": q, "c": elt_json(f, &c)?, "ok": true,
                "d": elt_json(f, &rep.d)?,
                "norm_d": elt_json(f, &rep.norm_d)?,
            })
        }
        other => anyhow::bail!("unknown normsys action: {other}"),
    };
    write_out(out, &payload)?;
    Ok(payload)
}

fn cmd_ng(
    action: &str,
    args: &[u64],
    q: u64,
    t: u32,
    seed: u64,
    budget_seconds: Option<u64>,
    out: &Option<PathBuf>,
) -> anyhow::Result<Value> {
    let deadline = budget_seconds.map(|s| Instant::now() + Duration::from_secs(s));
    let payload = match action {
        "k46-build" => {
            let tc = TowerCtx::for_q_t(q, t - 1)?;
            let (method, cert) = find_six_auto(&tc)?;
            let bic = build_k46(&tc, &cert)?;
            let file = BicliqueCertFile::build(&tc, &bic)?;
            let mut payload = serde_json::to_value(CertFile::Biclique(file))?;
            payload["method"] = json!(method);
            payload
        }
        "k46-search" => {
            let s = *args.first().unwrap_or(&6) as usize;
            let g = ng_build(q, t)?;
            match g.search_biclique(s, deadline)? {
                Some(cert) => {
                    let file = BicliqueCertFile::build(g.tower(), &cert)?;
                    serde_json::to_value(CertFile::Biclique(file))?
                }
                None => json!({ "q": q, "t": t, "s": s, "found": false }),
            }
        }
        "free-check" => {
            let t_size = *args.first().unwrap_or(&4) as usize;
            let s = *args.get(1).unwrap_or(&7) as usize;
            let g = ng_build(q, t)?;
            let sample = if g.vertex_count() > 60 {
                Some((100_000u64, seed))
            } else {
                None
            };
            let rep = g.check_ktt_free(t_size, s, sample)?;
            if !rep.free {
                anyhow::bail!(Error::VerificationFailed("freeness counterexample found"));
            }
            json!({
                "q": q, "t": t, "t_size": t_size, "s": s,
                "free": rep.free, "samples": rep.samples, "seed": rep.seed,
            })
        }
        "count-k46" => {
            let g = ng_build(q, t)?;
            if q <= 3 {
                let rep = g.count_k46(None)?;
                json!({ "q": q, "t": t, "exact": rep.exact })
            } else {
                let rep = g.count_k46(Some((100_000, seed)))?;
                let (est, sigma) = rep.estimate.expect("sampled mode");
                json!({
                    "q": q, "t": t, "label": "ESTIMATE",
                    "estimate": est, "one_sigma": sigma,
                    "samples": rep.samples, "seed": rep.seed,
                })
            }
        }
        "degree-law" => {
            let g = ng_build(q, t)?;
            g.degree_law()?;
            json!({ "q": q, "t": t, "degree": pow(q, t - 1) - 1, "ok": true })
        }
        other => anyhow::bail!("unknown ng action: {other}"),
    };
    write_out(out, &payload)?;
    Ok(payload)
}

fn repro_f16() -> anyhow::Result<Value> {
    // F_{2^12} with modulus X^12+X^7+X^6+X^5+X^3+X+1; U = class of X
    let modulus = Poly::new(2, vec![1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]);
    let f = Arc::new(make_extension(2, 12, Some(modulus))?);
    let u = f.elt(vec![0, 1])?;
    anyhow::ensure!(f.primitive() == u, "the residue class of X must be primitive");
    let tc = TowerCtx::new(f.clone(), 16, 3)?;
    let a = f.pow(&u, 405);
    anyhow::ensure!(f.is_one(&tc.norm(&a)) && !f.is_one(&a), "A = U^405 in the norm-one group");
    let sols = solve_3eq(&tc, &a)?;
    let expected: Vec<Elt> = [1725u64, 2775, 3435, 1065, 2130, 2370]
        .iter()
        .map(|&e| f.pow(&u, e))
        .collect();
    anyhow::ensure!(sols.len() == 6, "six solutions");
    for e in &expected {
        anyhow::ensure!(sols.contains(e), "documented solution missing");
    }
    for (x, y) in [(1065u64, 3435u64), (1725, 2775), (2130, 2370)] {
        anyhow::ensure!(f.mul(&f.pow(&u, x), &f.pow(&u, y)) == a, "decomposition");
    }
    Ok(json!({
        "claim": "f16",
        "pass": true,
        "a_power": 405,
        "solution_powers": [1725, 2775, 3435, 1065, 2130, 2370],
    }))
}

fn repro_no_k46_small(deadline: Option<Instant>) -> anyhow::Result<Value> {
    let mut results = Vec::new();
    for q in [2u64, 3, 4] {
        let g = ng_build(q, 4)?;
        let found = g.search_biclique(6, deadline)?.is_some();
        anyhow::ensure!(!found, "unexpected K_{{4,6}} in NG({q},4)");
        results.push(json!({ "q": q, "found": false }));
    }
    Ok(json!({ "claim": "no-k46-small", "pass": true, "graphs": results }))
}

fn cmd_repro(
    name: &str,
    budget_seconds: Option<u64>,
    out: &Option<PathBuf>,
) -> anyhow::Result<Value> {
    let deadline = budget_seconds.map(|s| Instant::now() + Duration::from_secs(s));
    let payload = match name {
        "f16" => repro_f16()?,
        "no-k46-small" => repro_no_k46_small(deadline)?,
        "all" => {
            let mut parts = vec![repro_f16()?, repro_no_k46_small(deadline)?];
            for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
                let tc = TowerCtx::for_q_t(q, 3)?;
                let group = tc.norm_one_group()?;
                let pair = planar_sets(&tc, &group)?;
                let cert = verify_difference_set(&tc, &group, &pair.h1, 1)?;
                anyhow::ensure!(cert.ok, "H1 difference set at q={q}");
                equivalence_to_singer(&tc, &group)?;
                parts.push(json!({ "claim": "diffset", "q": q, "pass": true }));
            }
            for q in [5u64, 7, 8, 9, 11, 13, 16] {
                let tc = TowerCtx::for_q_t(q, 3)?;
                let (method, cert) = find_six_auto(&tc)?;
                let bic = build_k46(&tc, &cert)?;
                bic.verify(&tc)?;
                parts.push(json!({ "claim": "k46", "q": q, "method": method, "pass": true }));
            }
            json!({ "claim": "all", "pass": true, "parts": parts })
        }
        other => anyhow::bail!("unknown repro bundle: {other}"),
    };
    write_out(out, &payload)?;
    Ok(payload)
}

fn pow(b: u64, e: u32) -> u64 {
    (0..e).fold(1, |acc, _| acc * b)
}
