use std::process::ExitCode;

use serde_json::json;
use weilstar::bundle::Mode;
use weilstar::config::RunConfig;
use weilstar::group::{self, Cell, Membership, StarMatrix};
use weilstar::operator;
use weilstar::report::{Check, Report};
use weilstar::ring::{InvolutiveRing, Subset};
use weilstar::weil::{self, Method, Weil};
use weilstar::{cache, Error, Result};

use crate::output::{self, Emission};
use crate::{CharacterCmd, Cli, Cmd, ConnectionCmd, CocycleCmd, GroupCmd, LagrangianCmd, MethodArg, RingCmd, WeilCmd};

const EXHAUSTIVE_LIMIT: u128 = 4096;

/// Errors caused by the request itself rather than by a computation.
fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidField(_)
            | Error::InvalidRing(_)
            | Error::WeilPrecondition { .. }
            | Error::Parse(_)
            | Error::WrongVariant { .. }
            | Error::SizeGuard { .. }
            | Error::NotInGroup(_)
            | Error::LimitExceeded(_)
    )
}

pub fn run(cli: &Cli) -> ExitCode {
    let cfg = cli.opts.config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let emission = match dispatch(&cli.cmd, &cfg) {
        Ok(em) => em,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_config_error(&e) { 2 } else { 1 });
        }
    };
    let bytes = match output::render(&emission, cfg.output) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = output::write(&bytes, cli.opts.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let report = match &emission {
        Emission::Report(r) | Emission::Cocycles(r, _) => r,
    };
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        let failures = serde_json::to_string_pretty(&report.failures()).unwrap_or_default();
        eprintln!("{failures}");
        ExitCode::from(1)
    }
}

fn dispatch(cmd: &Cmd, cfg: &RunConfig) -> Result<Emission> {
    use weilstar::config::RingSpec;
    macro_rules! on_ring {
        ($f:ident $(, $arg:expr)*) => {
            match &cfg.ring {
                RingSpec::TruncatedPoly { .. } => $f(&cfg.ring.truncated()?, cfg $(, $arg)*),
                RingSpec::MatrixRing { .. } => $f(&cfg.ring.matrix()?, cfg $(, $arg)*),
                RingSpec::Doubling { .. } => $f(&cfg.ring.doubling()?, cfg $(, $arg)*),
            }
        };
    }
    let em = match cmd {
        Cmd::Ring { cmd: RingCmd::Info } => on_ring!(ring_info)?,
        Cmd::Group { cmd: GroupCmd::Enumerate { limit } } => on_ring!(group_enumerate, *limit)?,
        Cmd::Group { cmd: GroupCmd::VerifyRelations } => on_ring!(group_relations)?,
        Cmd::Group { cmd: GroupCmd::NormalForm { matrix } } => on_ring!(normal_form, matrix)?,
        Cmd::Lagrangians { cmd: LagrangianCmd::Enumerate } => lagrangians(cfg)?,
        Cmd::Connection { cmd: ConnectionCmd::Verify { exhaustive } } => connection(cfg, *exhaustive)?,
        Cmd::Weil { cmd: WeilCmd::Build { method, element } } => weil_build(cfg, *method, element.as_deref())?,
        Cmd::Weil { cmd: WeilCmd::Compare } => {
            let w = weil_for(cfg)?;
            let mut report = w.compare_representations(cfg.samples, cfg.seed, cfg.tolerance)?;
            report.command = "weil compare".into();
            report
        }
        Cmd::Cocycle { cmd: CocycleCmd::Table } => return cocycle_table(cfg),
        Cmd::Character { cmd: CharacterCmd::Table { limit } } => character_table(cfg, *limit)?,
    };
    Ok(Emission::Report(em))
}

fn weil_for(cfg: &RunConfig) -> Result<Weil> {
    let ring = cfg.ring.weil_ring()?;
    Weil::from_bundle(cache::load_or_build(cfg.cache_dir.as_deref(), ring)?)
}

/// Parses `[[..],[..],[..],[..]]` into a 2x2 matrix over `ring`.
fn parse_matrix<R: InvolutiveRing>(ring: &R, raw: &str) -> Result<StarMatrix<R::Elem>> {
    let entries: Vec<Vec<i64>> =
        serde_json::from_str(raw).map_err(|e| Error::Parse(format!("matrix literal: {e}")))?;
    if entries.len() != 4 {
        return Err(Error::Parse(format!("matrix literal needs 4 entries, got {}", entries.len())));
    }
    let e = entries.iter().map(|c| ring.parse_coords(c)).collect::<Result<Vec<_>>>()?;
    Ok(StarMatrix::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()))
}

fn ring_info<R: InvolutiveRing>(ring: &R, cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new("ring info", ring.describe());
    let f = ring.field();
    report.observe("p", f.p());
    report.observe("q", f.q());
    report.observe("dim", ring.dim());
    report.observe("size", ring.size().to_string());
    if ring.size() > EXHAUSTIVE_LIMIT {
        report.observe("exhaustive", false);
        return Ok(report);
    }
    let all = ring.enumerate(Subset::All)?;
    report.observe("units", all.iter().filter(|a| ring.is_unit(a)).count());
    report.observe("symmetric", ring.enumerate(Subset::Symmetric)?.len());
    report.observe("symmetric_units", ring.enumerate(Subset::SymmetricUnits)?.len());
    report.observe("central_symmetric_units", ring.enumerate(Subset::CentralSymmetricUnits)?.len());

    let mut involutive = Check::new("a** = a", cfg.tolerance);
    let mut additive = Check::new("(a+b)* = a* + b*", cfg.tolerance);
    let mut anti = Check::new("(ab)* = b* a*", cfg.tolerance);
    for a in &all {
        involutive.add_bool(|| ring.format(a), ring.star(&ring.star(a)) == *a);
        for b in &all {
            let name = || format!("a = {}, b = {}", ring.format(a), ring.format(b));
            additive.add_bool(name, ring.star(&ring.add(a, b)) == ring.add(&ring.star(a), &ring.star(b)));
            anti.add_bool(name, ring.star(&ring.mul(a, b)) == ring.mul(&ring.star(b), &ring.star(a)));
        }
    }
    for c in [involutive, additive, anti] {
        report.push(c);
    }
    Ok(report)
}

fn group_enumerate<R: InvolutiveRing>(ring: &R, cfg: &RunConfig, limit: usize) -> Result<Report> {
    let mut report = Report::new("group enumerate", ring.describe());
    let elements = group::enumerate_group(ring, limit)?;
    report.observe("order", elements.len());
    let mut member = Check::new("closure lies in SL_*(2,A)", cfg.tolerance);
    let mut round_trip = Check::new("normal form multiplies back to g", cfg.tolerance);
    let mut cells = [0usize; 3];
    for g in &elements {
        let name = || group::format_matrix(ring, g);
        member.add_bool(name, group::membership(ring, g) == Membership::SlStar);
        match group::bruhat_normal_form(ring, g) {
            Ok(form) => {
                cells[match form.cell() {
                    Cell::B => 0,
                    Cell::BwB => 1,
                    Cell::BwBwB => 2,
                }] += 1;
                round_trip.add_bool(name, group::eval_word(ring, &form.word())? == *g);
            }
            Err(_) => round_trip.add_bool(name, false),
        }
    }
    report.observe("cells", json!({"B": cells[0], "BwB": cells[1], "BwBwB": cells[2]}));
    report.push(member);
    report.push(round_trip);
    Ok(report)
}

fn group_relations<R: InvolutiveRing>(ring: &R, cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new("group verify-relations", ring.describe());
    for outcome in group::verify_relations(ring, cfg.samples, cfg.seed)? {
        let mut check = Check::new(format!("relation {}", outcome.label), cfg.tolerance);
        check.count = outcome.instances;
        check.failures = outcome.failures;
        check.max_deviation = if outcome.passed { 0.0 } else { 1.0 };
        check.worst = Some(outcome.witness.clone().unwrap_or_else(|| "all instances".into()));
        report.push(check);
    }
    Ok(report)
}

fn normal_form<R: InvolutiveRing>(ring: &R, cfg: &RunConfig, raw: &str) -> Result<Report> {
    let g = parse_matrix(ring, raw)?;
    let mut report = Report::new("group normal-form", ring.describe());
    report.observe("matrix", group::format_matrix(ring, &g));
    let membership = group::membership(ring, &g);
    report.observe("membership", membership);
    if membership != Membership::SlStar {
        return Err(Error::NotInGroup("SL_*(2,A)"));
    }
    let form = group::bruhat_normal_form(ring, &g)?;
    report.observe("cell", form.cell().to_string());
    report.observe("w_length", form.w_length());
    report.observe("word", group::format_word(ring, &form.word()));
    let mut check = Check::new("normal form multiplies back to g", cfg.tolerance);
    check.add_bool(|| group::format_matrix(ring, &g), group::eval_word(ring, &form.word())? == g);
    report.push(check);
    Ok(report)
}

fn lagrangians(cfg: &RunConfig) -> Result<Report> {
    let ring = cfg.ring.weil_ring()?;
    let bundle = cache::load_or_build(cfg.cache_dir.as_deref(), ring)?;
    let (module, table) = (&bundle.module, &bundle.table);
    let mut report = Report::new("lagrangians enumerate", module.ring().describe());
    report.observe("count", table.len());
    report.observe("base_point", table.base_point(module));
    let list: Vec<_> = table
        .iter()
        .map(|l| {
            let gens: Vec<String> = l
                .generators
                .iter()
                .map(|v| format!("({}, {})", module.ring().format(&v.first), module.ring().format(&v.second)))
                .collect();
            json!({"id": l.id, "size": l.len(), "generators": gens})
        })
        .collect();
    report.observe("lagrangians", list);

    let mut lag = Check::new("L = L^perp", cfg.tolerance);
    let mut size = Check::new("|L|^2 = |W|", cfg.tolerance);
    for l in table.iter() {
        let set = l.elements.iter().copied().collect();
        lag.add_bool(|| format!("L{}", l.id), module.is_lagrangian(&set));
        size.add_bool(|| format!("L{}", l.id), l.len() * l.len() == module.size_w());
    }
    // orbit of the base point; not every Lagrangian is free when m > 1
    let mut orbit = vec![false; table.len()];
    let mut frontier = vec![table.base_point(module)];
    orbit[frontier[0]] = true;
    let sets = group::GeneratorSets::new(module.ring())?;
    let mut gens: Vec<StarMatrix<_>> = Vec::new();
    for t in &sets.units {
        gens.push(group::h(module.ring(), t)?);
    }
    for s in &sets.symmetric {
        gens.push(group::u(module.ring(), s)?);
    }
    gens.push(group::w(module.ring()));
    while let Some(l) = frontier.pop() {
        for g in &gens {
            let next = table.act(module, g, l)?;
            if !orbit[next] {
                orbit[next] = true;
                frontier.push(next);
            }
        }
    }
    report.observe("base_orbit_size", orbit.iter().filter(|&&b| b).count());
    report.push(lag);
    report.push(size);
    Ok(report)
}

fn connection(cfg: &RunConfig, exhaustive: bool) -> Result<Report> {
    let ring = cfg.ring.weil_ring()?;
    let exhaustive = exhaustive || ring.m() == 1;
    let bundle = cache::load_or_build(cfg.cache_dir.as_deref(), ring)?;
    let mut report = Report::new("connection verify", bundle.module.ring().describe());
    let mode = if exhaustive { Mode::Exhaustive } else { Mode::Sampled { samples: cfg.samples, seed: cfg.seed } };
    report.observe("mode", if exhaustive { "exhaustive" } else { "sampled" });
    report.observe("lagrangians", bundle.table.len());
    for c in bundle.verify_connection(mode, cfg.tolerance)? {
        report.push(c);
    }
    Ok(report)
}

fn operator_json(op: &operator::Operator) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..op.nrows())
        .map(|i| {
            (0..op.ncols())
                .map(|j| {
                    let z = weilstar::scalar::tidy(op[(i, j)]);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    json!(rows)
}

fn weil_build(cfg: &RunConfig, method: MethodArg, element: Option<&str>) -> Result<Report> {
    let w = weil_for(cfg)?;
    let ring = w.ring().clone();
    let name = match method {
        MethodArg::Bruhat => "bruhat",
        MethodArg::Geometric => "geometric",
    };
    let mut report = Report::new(&format!("weil build --method {name}"), ring.describe());
    report.observe("dim", w.dim());
    report.observe("omega", [w.omega().re, w.omega().im]);
    let method = match method {
        MethodArg::Bruhat => Method::Bruhat,
        MethodArg::Geometric => Method::Geometric,
    };
    let elements = weil::sample_elements(&ring, cfg.samples, cfg.seed)?;
    let mut unitary = Check::new("ρ(g) unitary", cfg.tolerance);
    for (i, g) in elements.iter().enumerate() {
        unitary.add(|| format!("sample #{i}"), operator::unitarity_deviation(&w.weil_op(g, method)?));
    }
    report.push(unitary);
    match method {
        Method::Bruhat => {
            for c in w.verify_operator_relations(cfg.samples, cfg.seed, cfg.tolerance)? {
                report.push(c);
            }
            let pairs: Vec<_> = elements.chunks(2).filter(|p| p.len() == 2).map(|p| (p[0].clone(), p[1].clone())).collect();
            report.push(w.check_homomorphism(&pairs, cfg.tolerance)?);
        }
        Method::Geometric => {
            for c in w.check_projective_law(cfg.samples, cfg.seed, cfg.tolerance)? {
                report.push(c);
            }
        }
    }
    if let Some(raw) = element {
        let g = parse_matrix(&ring, raw)?;
        if group::membership(&ring, &g) != Membership::SlStar {
            return Err(Error::NotInGroup("SL_*(2,A)"));
        }
        report.observe("element", group::format_matrix(&ring, &g));
        report.observe("operator", operator_json(&w.weil_op(&g, method)?));
    }
    Ok(report)
}

fn cocycle_table(cfg: &RunConfig) -> Result<Emission> {
    let w = weil_for(cfg)?;
    let rows = w.cocycle_table(cfg.samples, cfg.seed)?;
    let mut report = Report::new("cocycle table", w.ring().describe());
    report.observe("samples", cfg.samples);
    report.observe("seed", cfg.seed);
    let mut agree = Check::new("formula cocycle equals operational cocycle", cfg.tolerance);
    let mut residual = Check::new("operational cocycle residual", weil::COCYCLE_RESIDUAL_LIMIT);
    for r in &rows {
        let name = || format!("g = {}, h = {}", r.g_word, r.h_word);
        let d = ((r.c_formula[0] - r.c_operational[0]).powi(2) + (r.c_formula[1] - r.c_operational[1]).powi(2)).sqrt();
        agree.add(name, d);
        residual.add(name, r.residual);
    }
    report.push(agree);
    report.push(residual);
    Ok(Emission::Cocycles(report, rows))
}

fn character_table(cfg: &RunConfig, limit: usize) -> Result<Report> {
    let w = weil_for(cfg)?;
    let mut report = Report::new("character table", w.ring().describe());
    let bruhat = w.rep_character(Method::Bruhat, limit)?;
    let geometric = w.rep_character(Method::Geometric, limit)?;
    let chi_b: Vec<_> = bruhat.iter().map(|(_, c)| *c).collect();
    let chi_g: Vec<_> = geometric.iter().map(|(_, c)| *c).collect();
    let norm = |a: &[_], b: &[_]| {
        let z = weilstar::scalar::tidy(weil::character_inner_product(a, b));
        [z.re, z.im]
    };
    report.observe("order", chi_b.len());
    report.observe("dim", w.dim());
    report.observe("bruhat_norm", norm(&chi_b, &chi_b));
    report.observe("geometric_norm", norm(&chi_g, &chi_g));
    let ring = w.ring();
    let rows: Vec<_> = bruhat
        .iter()
        .zip(&chi_g)
        .map(|((g, b), gm)| {
            let (b, gm) = (weilstar::scalar::tidy(*b), weilstar::scalar::tidy(*gm));
            json!({"g": group::format_matrix(ring, g), "bruhat": [b.re, b.im], "geometric": [gm.re, gm.im]})
        })
        .collect();
    report.observe("values", rows);

    let mut bound = Check::new("|χ(g)| <= dim", cfg.tolerance);
    let mut id = Check::new("χ(1) = dim", cfg.tolerance);
    let dim = w.dim() as f64;
    for ((g, b), gm) in bruhat.iter().zip(&chi_g) {
        let name = || group::format_matrix(ring, g);
        bound.add(name, (b.norm() - dim).max(gm.norm() - dim).max(0.0));
        if *g == group::identity(ring) {
            id.add(name, (b - dim).norm().max((gm - dim).norm()));
        }
    }
    report.push(bound);
    report.push(id);
    Ok(report)
}
