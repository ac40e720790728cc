use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use linkforge::constructions::{
    bipartite_pattern_build, complete_pattern_build, knot_extract, knots_driver, lotsknots,
    multijoin, multimerge, ramsey_monochromatic_link, verify_cg6, verify_cg7, verify_cor3,
    verify_prop2, verify_ty, verify_ty_random, wprime_build, CountMode, LinkingProvider,
    PartitionedLink, Schedule,
};
use linkforge::cycles::OrientedCycle;
use linkforge::diagram::{build_twisted_embedding, Diagram, TwistedDiagram};
use linkforge::geometry::{
    d4_random_fixture, disjoint_triangles_fixture, double_clasp_fixture, figure_eight_fixture,
    generic_direction, hopf_fixture, keyrings_fixture, random_embedding, torus_link_fixture,
    trefoil_fixture, AbstractGraph, LinkFixture,
};
use linkforge::invariants::{conway_a2, conway_skein, gauss_code, linking_matrix, linking_number};
use linkforge::io::embedding_to_json;
use linkforge::patterns::{
    contains_complete, contains_complete_bipartite, contains_complete_odd, contains_multipartite,
    extract_pattern, provider_pattern, PatternGraph, PatternMode,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::artifact::{LinkFile, SyntheticSpec};
use crate::{
    CliError, Command, ConstructCmd, Counts, FixtureName, Format, GenCmd, InvariantCmd, Mode,
    Outcome, PatternCmd, PatternKind, RunConfig, Selection, Shape, Status, VerifyCmd,
};

type Res<T> = Result<T, CliError>;

struct Done {
    status: Status,
    artifact: String,
    /// Small headline fields copied into the summary.
    info: Value,
}

fn json_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("artifact serializes");
    s.push('\n');
    s
}

fn done<T: Serialize>(pass: bool, artifact: &T, info: Value) -> Done {
    Done {
        status: if pass { Status::Pass } else { Status::Fail },
        artifact: json_text(artifact),
        info,
    }
}

pub fn command_name(cmd: &Command) -> String {
    let (group, sub) = match cmd {
        Command::Gen(c) => ("gen", format!("{c:?}")),
        Command::Invariant(c) => ("invariant", format!("{c:?}")),
        Command::Pattern(c) => ("pattern", format!("{c:?}")),
        Command::Construct(c) => ("construct", format!("{c:?}")),
        Command::Verify(c) => ("verify", format!("{c:?}")),
    };
    let mut name = String::new();
    for (i, ch) in sub.chars().take_while(|c| c.is_alphanumeric()).enumerate() {
        if ch.is_uppercase() && i > 0 {
            name.push('-');
        }
        name.push(ch.to_ascii_lowercase());
    }
    format!("{group} {name}")
}

/// Runs one command. Never panics on bad input; every failure becomes an
/// [`Outcome`] with the matching status.
pub fn run(cfg: &RunConfig) -> Outcome {
    let command = command_name(&cfg.command);
    match dispatch(cfg) {
        Ok(d) => Outcome {
            status: d.status,
            artifact: Some(d.artifact),
            summary: json!({ "command": command, "status": d.status, "exit": d.status.exit_code(), "result": d.info }),
        },
        Err(e) => {
            let status = e.status();
            Outcome {
                status,
                artifact: None,
                summary: json!({
                    "command": command,
                    "status": status,
                    "exit": status.exit_code(),
                    "code": e.code(),
                    "message": e.to_string(),
                }),
            }
        }
    }
}

fn dispatch(cfg: &RunConfig) -> Res<Done> {
    match &cfg.command {
        Command::Gen(c) => gen(cfg, c),
        Command::Invariant(c) => invariant(cfg, c),
        Command::Pattern(c) => pattern(cfg, c),
        Command::Construct(c) => construct(cfg, c),
        Command::Verify(c) => verify(cfg, c),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Res<T> {
    v.ok_or_else(|| usage(format!("this command needs {flag}")))
}

fn read_json(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn input(cfg: &RunConfig) -> Res<Value> {
    let path = cfg
        .input
        .as_deref()
        .ok_or_else(|| usage("this command needs --input"))?;
    read_json(path)
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Res<T> {
    serde_json::from_value(v).map_err(|e| usage(format!("input is not a {what}: {e}")))
}

fn link_file(cfg: &RunConfig) -> Res<LinkFile> {
    parse(input(cfg)?, "link file")
}

// ---------------------------------------------------------------- gen

fn weighted_complete(n: usize) -> Res<AbstractGraph> {
    let mut g = AbstractGraph::complete(n);
    g.set_weights(&(1..=g.edge_count() as u64).collect::<Vec<_>>())?;
    Ok(g)
}

fn fixture_file(fx: &LinkFixture) -> Res<LinkFile> {
    let mut f = LinkFile::from_embedding(&fx.embedding, fx.direction, &fx.cycles);
    f.diagram = Some(fx.diagram()?.to_json());
    Ok(f)
}

fn gen(cfg: &RunConfig, c: &GenCmd) -> Res<Done> {
    let file = match c {
        GenCmd::Random { graph, bits } => {
            let seed = need(cfg.seed, "--seed")?;
            if graph.eq_ignore_ascii_case("d4") {
                let fx = d4_random_fixture(seed, *bits)?;
                let mut comps = fx.config.c.to_vec();
                comps.push(fx.config.w_prime.clone());
                let mut f = LinkFile::from_embedding(&fx.embedding, fx.direction, &comps);
                f.roles =
                    BTreeMap::from([("c".into(), vec![0, 1, 2, 3]), ("w_prime".into(), vec![4])]);
                f
            } else {
                let n: usize = graph
                    .strip_prefix(['K', 'k'])
                    .and_then(|s| s.parse().ok())
                    .filter(|&n| n >= 3)
                    .ok_or_else(|| {
                        usage(format!(
                            "--graph must be K<n> with n >= 3 or D4, got {graph:?}"
                        ))
                    })?;
                let emb = random_embedding(&weighted_complete(n)?, seed, *bits)?;
                let dir = generic_direction(&emb, seed)?;
                LinkFile::from_embedding(&emb, dir, &[])
            }
        }
        GenCmd::Torus { c, segments } => {
            let lam = need(cfg.lambda, "--lambda")?;
            let seg = segments.unwrap_or((4 * lam as usize + 8).max(16));
            let fx = torus_link_fixture(*c, lam, seg)?;
            LinkFile::from_embedding(&fx.embedding, fx.direction, &fx.cycles)
        }
        GenCmd::Keyring { rings, keys } => {
            let k = keyrings_fixture(*rings, *keys)?;
            let mut comps = k.rings.clone();
            comps.extend(k.keys.iter().flatten().cloned());
            let mut f = LinkFile::from_embedding(&k.embedding, k.direction, &comps);
            f.roles = BTreeMap::from([
                ("rings".into(), (0..*rings).collect()),
                ("keys".into(), (*rings..comps.len()).collect()),
            ]);
            f
        }
        GenCmd::Twisted => {
            let lam = need(cfg.lambda, "--lambda")?;
            let src = link_file(cfg)?;
            let td = build_twisted_embedding(&src.diagram()?, lam)?;
            LinkFile {
                twisted: Some(td.to_json()),
                components: src.components,
                roles: src.roles,
                ..Default::default()
            }
        }
        GenCmd::Fixture { name } => match name {
            FixtureName::Trefoil => fixture_file(&trefoil_fixture()?)?,
            FixtureName::FigureEight => fixture_file(&figure_eight_fixture()?)?,
            FixtureName::Hopf => fixture_file(&hopf_fixture()?)?,
            FixtureName::Triangles => fixture_file(&disjoint_triangles_fixture(3)?)?,
            FixtureName::DoubleClasp => {
                let fx = double_clasp_fixture()?;
                let mut comps = fx.config.c.to_vec();
                comps.push(fx.config.w_prime.clone());
                let mut f = LinkFile::from_embedding(&fx.embedding, fx.direction, &comps);
                f.diagram = Some(fx.diagram()?.to_json());
                f.roles =
                    BTreeMap::from([("c".into(), vec![0, 1, 2, 3]), ("w_prime".into(), vec![4])]);
                f
            }
        },
    };
    let info = json!({ "components": file.components.len() });
    Ok(done(true, &file, info))
}

// ---------------------------------------------------------------- invariant

fn pick(cycles: &[OrientedCycle], sel: &[usize]) -> Res<Vec<OrientedCycle>> {
    sel.iter()
        .map(|&i| {
            cycles.get(i).cloned().ok_or_else(|| {
                usage(format!(
                    "component {i} out of range (have {})",
                    cycles.len()
                ))
            })
        })
        .collect()
}

fn invariant(cfg: &RunConfig, c: &InvariantCmd) -> Res<Done> {
    let file = link_file(cfg)?;
    let d = file.diagram()?;
    let cycles = file.cycles(d.graph())?;
    match c {
        InvariantCmd::Lk { pair } => {
            let [a, b] = pick(&cycles, &pair.0)?
                .try_into()
                .map_err(|_| usage("--pair takes exactly two components"))?;
            let lk = linking_number(&d, &a, &b)?;
            let out = json!({ "pair": pair.0, "lk": lk });
            Ok(done(true, &out, out.clone()))
        }
        InvariantCmd::A2 { component, skein } => {
            let k = pick(&cycles, &[*component])?.remove(0);
            let a2 = conway_a2(&d, &k)?;
            let mut out = json!({ "component": component, "a2": a2 });
            let mut pass = true;
            if *skein {
                let cap = cfg.oracle_cap as usize;
                let gc = gauss_code(&d, std::slice::from_ref(&k))?;
                if gc.crossing_count() > cap {
                    return Err(linkforge::Error::OracleCapExceeded {
                        crossings: gc.crossing_count(),
                        cap,
                    }
                    .into());
                }
                let z = conway_skein(&d, std::slice::from_ref(&k), cap)?;
                out["skein_a2"] = json!(z.coeff(2));
                pass = z.coeff(2) == a2;
            }
            Ok(done(pass, &out, out.clone()))
        }
        InvariantCmd::Matrix => {
            let m = linking_matrix(&d, &cycles)?;
            Ok(done(true, &m, json!({ "components": m.len() })))
        }
    }
}

// ---------------------------------------------------------------- pattern

fn pattern(cfg: &RunConfig, c: &PatternCmd) -> Res<Done> {
    match c {
        PatternCmd::Extract {
            kind,
            vertex_weights,
            format,
        } => {
            let mode = match kind {
                PatternKind::Integer => PatternMode::Integer,
                PatternKind::Mod2 => PatternMode::Mod2,
            };
            let p = match cfg.mode {
                Mode::Geometric => {
                    let file = link_file(cfg)?;
                    let d = file.diagram()?;
                    extract_pattern(&d, &file.cycles(d.graph())?, mode, *vertex_weights)?
                }
                Mode::Synthetic => {
                    if *vertex_weights {
                        return Err(usage("vertex weights need a geometric link"));
                    }
                    let (p, cycles) =
                        parse::<SyntheticSpec>(input(cfg)?, "synthetic spec")?.build()?;
                    provider_pattern(&p, &cycles, mode)?
                }
            };
            let info = json!({ "vertices": p.vertex_count(), "edges": p.edges().len() });
            Ok(match format {
                Format::Json => done(true, &p, info),
                Format::Dot => Done {
                    status: Status::Pass,
                    artifact: p.to_dot(),
                    info,
                },
            })
        }
        PatternCmd::Query {
            shape,
            m,
            min_edge_weight,
            min_vertex_weight,
            min_q_weight,
        } => {
            let p: PatternGraph = parse(input(cfg)?, "pattern")?;
            let n = need(cfg.n, "-n")?;
            let witness = match shape {
                Shape::Complete => {
                    contains_complete(&p, n, *min_edge_weight, *min_vertex_weight).map(|w| json!(w))
                }
                Shape::CompleteOdd => {
                    contains_complete_odd(&p, n, *min_edge_weight).map(|w| json!(w))
                }
                Shape::Bipartite => contains_complete_bipartite(&p, n).map(|w| json!(w)),
                Shape::Multipartite => {
                    contains_multipartite(&p, n, *m, *min_q_weight).map(|w| json!(w))
                }
            };
            let out = json!({ "found": witness.is_some(), "witness": witness });
            Ok(done(witness.is_some(), &out, out.clone()))
        }
    }
}

// ---------------------------------------------------------------- construct

struct Loaded {
    p: LinkingProvider,
    cycles: Vec<OrientedCycle>,
    roles: BTreeMap<String, Vec<usize>>,
}

impl Loaded {
    fn role(&self, name: &str) -> Res<Vec<OrientedCycle>> {
        let idx = self.roles.get(name).ok_or_else(|| {
            usage(format!(
                "input has no {name:?} role; pass the components explicitly"
            ))
        })?;
        pick(&self.cycles, idx)
    }

    fn sel(&self, s: &Selection) -> Res<Vec<OrientedCycle>> {
        pick(&self.cycles, &s.0)
    }

    fn sel_or_all(&self, s: &Option<Selection>) -> Res<Vec<OrientedCycle>> {
        match s {
            Some(s) => self.sel(s),
            None => Ok(self.cycles.clone()),
        }
    }

    /// `b` if given, else every component not in `a`.
    fn rest(&self, a: &Selection, b: &Option<Selection>) -> Res<Vec<OrientedCycle>> {
        match b {
            Some(b) => self.sel(b),
            None => Ok((0..self.cycles.len())
                .filter(|i| !a.0.contains(i))
                .map(|i| self.cycles[i].clone())
                .collect()),
        }
    }

    /// Rings and, per ring, its keys.
    fn keyrings(&self) -> Res<(Vec<OrientedCycle>, Vec<Vec<OrientedCycle>>)> {
        let rings = self.role("rings")?;
        let keys = self.role("keys")?;
        if rings.is_empty() || keys.len() % rings.len() != 0 {
            return Err(usage("keys do not split evenly over rings"));
        }
        let per = keys.len() / rings.len();
        Ok((rings, keys.chunks(per).map(<[_]>::to_vec).collect()))
    }
}

fn load(cfg: &RunConfig) -> Res<Loaded> {
    match cfg.mode {
        Mode::Geometric => {
            let file = link_file(cfg)?;
            let (emb, dir) = file
                .embedding()?
                .ok_or_else(|| usage("constructions need an input with an embedding"))?;
            let cycles = file.cycles(emb.graph())?;
            Ok(Loaded {
                p: LinkingProvider::geometric(emb, dir)?,
                cycles,
                roles: file.roles,
            })
        }
        Mode::Synthetic => {
            let spec: SyntheticSpec = parse(input(cfg)?, "synthetic spec")?;
            let (p, cycles) = spec.build()?;
            Ok(Loaded {
                p,
                cycles,
                roles: spec.roles,
            })
        }
    }
}

fn count_mode(c: Counts) -> CountMode {
    match c {
        Counts::ClosedForm => CountMode::ClosedForm,
        Counts::Relaxed => CountMode::Relaxed,
    }
}

fn construct(cfg: &RunConfig, c: &ConstructCmd) -> Res<Done> {
    let mut l = load(cfg)?;
    let result: Value = match c {
        ConstructCmd::Multimerge { j, x } => {
            let x = match x {
                Some(s) => l.sel(s)?,
                None => l.role("rings")?,
            };
            let j = match j {
                Some(s) => l.sel(s)?,
                None => l.keyrings()?.1.into_iter().map(|k| k[0].clone()).collect(),
            };
            let n = cfg.n.unwrap_or(x.len().isqrt());
            serde_json::to_value(multimerge(&mut l.p, &j, &x, n)?)
        }
        ConstructCmd::Multijoin {
            j,
            l: ls,
            x,
            y,
            counts,
        } => {
            let lam = need(cfg.lambda, "--lambda")?;
            let (j, ls, x, y) = (l.sel(j)?, l.sel(ls)?, l.sel(x)?, l.sel(y)?);
            serde_json::to_value(multijoin(
                &mut l.p,
                &j,
                &ls,
                &x,
                &y,
                lam,
                count_mode(*counts),
            )?)
        }
        ConstructCmd::Bipartite => {
            let (rings, keys) = l.keyrings()?;
            serde_json::to_value(bipartite_pattern_build(
                &mut l.p,
                &rings,
                &keys,
                cfg.n.unwrap_or(1),
            )?)
        }
        ConstructCmd::Complete {
            p1,
            p2,
            q,
            m,
            counts,
        } => {
            let lam = need(cfg.lambda, "--lambda")?;
            let link = PartitionedLink {
                p1: l.sel(p1)?,
                p2: l.sel(p2)?,
                q: match q {
                    Some(q) => l.sel(q)?,
                    None => Vec::new(),
                },
            };
            let (out, trace) = complete_pattern_build(
                &mut l.p,
                &link,
                link.q.len(),
                *m,
                lam,
                count_mode(*counts),
            )?;
            Ok(json!({ "link": out, "trace": trace }))
        }
        ConstructCmd::Wprime { a, b } => {
            let lam = need(cfg.lambda, "--lambda")?;
            let (av, bv) = (l.sel(a)?, l.rest(a, b)?);
            serde_json::to_value(wprime_build(&mut l.p, &av, &bv, lam)?)
        }
        ConstructCmd::KnotExtract { a, b } => {
            let lam = need(cfg.lambda, "--lambda")?;
            let (av, bv) = (l.sel(a)?, l.rest(a, b)?);
            serde_json::to_value(knot_extract(&mut l.p, &av, &bv, lam)?)
        }
        ConstructCmd::Lotsknots { components, counts } => {
            let lam = need(cfg.lambda, "--lambda")?;
            let n = need(cfg.n, "-n")?;
            let link = l.sel_or_all(components)?;
            let schedule = Schedule::new(n, cfg.alpha.unwrap_or(1), count_mode(*counts))?;
            serde_json::to_value(lotsknots(&mut l.p, &link, n, lam, &schedule)?)
        }
        ConstructCmd::Driver { components, counts } => {
            let n = need(cfg.n, "-n")?;
            let alpha = need(cfg.alpha, "--alpha")?;
            let link = l.sel_or_all(components)?;
            serde_json::to_value(knots_driver(
                &mut l.p,
                &link,
                n,
                alpha,
                count_mode(*counts),
            )?)
        }
        ConstructCmd::Ramsey { components } => {
            let n = need(cfg.n, "-n")?;
            let link = l.sel_or_all(components)?;
            serde_json::to_value(ramsey_monochromatic_link(&l.p, &link, n)?)
        }
    }
    .expect("construction result serializes");
    let mut out = json!({ "mode": cfg.mode, "result": result });
    if let LinkingProvider::Geometric(g) = &l.p {
        out["embedding"] = embedding_to_json(g.embedding());
        out["direction"] = json!(g.direction().vector());
    }
    let info = headline(&result);
    Ok(done(true, &out, info))
}

/// The few scalar fields worth echoing in a summary line.
fn headline(result: &Value) -> Value {
    let mut h = serde_json::Map::new();
    if let Value::Object(m) = result {
        for key in [
            "a2",
            "index",
            "branch",
            "index_set",
            "lk_x",
            "lk_y",
            "sign",
            "components",
            "case",
            "r",
            "rings",
            "lambda",
        ] {
            if let Some(v) = m.get(key) {
                h.insert(key.into(), v.clone());
            }
        }
        // driver output nests the lotsknots result next to its schedule
        if let Some(Value::Object(s)) = m.get("schedule") {
            h.insert("lambda".into(), s["lambda"].clone());
        }
        if let Some(inner @ Value::Object(_)) = m.get("result") {
            if let Value::Object(more) = headline(inner) {
                h.extend(more);
            }
        }
    }
    Value::Object(h)
}

// ---------------------------------------------------------------- verify

fn twisted_input(
    cfg: &RunConfig,
    lam: u64,
    fallback: impl FnOnce() -> Res<Diagram>,
) -> Res<TwistedDiagram> {
    if cfg.input.is_none() {
        return Ok(build_twisted_embedding(&fallback()?, lam)?);
    }
    let file = link_file(cfg)?;
    match file.twisted()? {
        Some(td) => Ok(td),
        None => Ok(build_twisted_embedding(&file.diagram()?, lam)?),
    }
}

fn verify(cfg: &RunConfig, c: &VerifyCmd) -> Res<Done> {
    match c {
        VerifyCmd::Cg6 { bits } => {
            let r = verify_cg6(cfg.trials, need(cfg.seed, "--seed")?, *bits);
            let info = json!({ "trials": r.trials, "passes": r.passes });
            Ok(done(r.all_passed(), &r, info))
        }
        VerifyCmd::Cg7 { bits } => {
            let r = verify_cg7(cfg.trials, need(cfg.seed, "--seed")?, *bits);
            let info = json!({ "trials": r.trials, "passes": r.passes });
            Ok(done(r.all_passed(), &r, info))
        }
        VerifyCmd::Ty { bits } => {
            let r = verify_ty_random(cfg.trials, need(cfg.seed, "--seed")?, *bits);
            let fx = double_clasp_fixture()?;
            let clasp = verify_ty(&fx.config, &fx.diagram()?)?;
            let pass = r.all_passed() && clasp.pass;
            let info =
                json!({ "trials": r.trials, "passes": r.passes, "double_clasp": clasp.pass });
            Ok(done(
                pass,
                &json!({ "random": r, "double_clasp": clasp }),
                info,
            ))
        }
        VerifyCmd::Prop2 { bits, literal } => {
            let lam = need(cfg.lambda, "--lambda")?;
            let td = twisted_input(cfg, lam, || {
                let seed = need(cfg.seed, "--seed (or --input)")?;
                let emb = random_embedding(&weighted_complete(6)?, seed, *bits)?;
                Ok(Diagram::project(&emb, generic_direction(&emb, seed)?)?)
            })?;
            let r = verify_prop2(&td, lam, literal.then_some(cfg.expansion_cap))?;
            let info = json!({ "pairs": r.pairs, "min_lk": r.min_lk, "literal_checked": r.literal_checked });
            Ok(done(r.pass, &r, info))
        }
        VerifyCmd::Cor3 => {
            let td = twisted_input(cfg, cfg.lambda.unwrap_or(1), || {
                Ok(disjoint_triangles_fixture(3)?.diagram()?)
            })?;
            let r = verify_cor3(&td)?;
            let info = json!({ "triples": r.triples, "assignments": r.assignments });
            Ok(done(r.positive_pass && r.mirror_negative_pass, &r, info))
        }
    }
}
