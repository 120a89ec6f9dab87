//! One function per subcommand, each returning a [`Report`].

use std::fs;
use std::path::Path;

use serde_json::Value;

use cmlab::arith::parse_ring;
use cmlab::catalog::{family, family_table, FamilyId};
use cmlab::ext::{ext_dim, ext_dim_auto};
use cmlab::formats::{graph_from_json, laurent_from_json, laurent_pair_from_json, mf_from_json, mf_to_json, FormatError};
use cmlab::groups::{builtin_group, gorenstein_check, is_small, GroupName};
use cmlab::mf::{is_reduced, multirank, HypersurfaceSpec, MatrixFactorization};
use cmlab::normal_form::{
    ainf_block_to_mf, ainf_reduce, ainf_reduce_at, dinf_block_to_mf, dinf_reduce, dinf_reduce_at, Block, BlockModule,
    LaurentMatrix, ReductionCertificate,
};
use cmlab::resolution::{
    ade_graph, certify_minimal, edim_rational, fundamental_cycle, intersection_matrix, is_negative_definite,
    self_intersection, AdeType, DualGraph, CLAIMED_SIMPLE_Z_SQUARED,
};
use cmlab::singular::{export_singular, session_problem, ExportProblem};

use crate::report::{Failure, Report};
use crate::{Command, Singularity};

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| Failure::Domain {
        name: "IoError".into(),
        message: format!("{}: {e}", path.display()),
    })
}

fn format_failure(path: &Path, e: FormatError) -> Failure {
    match e {
        FormatError::Mf(e) => Failure::domain("MfError", e),
        FormatError::NormalForm(e) => Failure::domain("NormalFormError", e),
        FormatError::Graph(e) => Failure::domain("ResolutionError", e),
        other => Failure::Parse(format!("{}: {other}", path.display())),
    }
}

fn load_mf(path: &Path) -> Res<MatrixFactorization> {
    mf_from_json(&read(path)?).map_err(|e| format_failure(path, e))
}

fn ring_arg(text: &str) -> Res<HypersurfaceSpec> {
    let (v, f) = parse_ring(text).map_err(|e| Failure::Parse(format!("--ring: {e}")))?;
    HypersurfaceSpec::new(&v, f, None).map_err(|e| Failure::domain("MfError", e))
}

fn same_hypersurface(a: &HypersurfaceSpec, b: &HypersurfaceSpec) -> bool {
    a.vars() == b.vars() && a.f() == b.f()
}

pub fn run(cmd: &Command) -> Res<Report> {
    match cmd {
        Command::Verify { ring, mf } => verify(ring.as_deref(), mf),
        Command::Catalog { id, list, out } => catalog(id.as_deref(), *list, out.as_deref()),
        Command::Normform {
            singularity,
            input,
            prec,
            out_dir,
        } => normform(*singularity, input, *prec, out_dir.as_deref()),
        Command::Ext {
            index,
            source,
            target,
            trunc,
            auto_raise,
            max_trunc,
        } => ext(*index, source, target, *trunc, *auto_raise, *max_trunc),
        Command::Cycle { graph } => cycle(graph),
        Command::Group { name, check, cap } => group(name, check, *cap),
        Command::ExportSingular {
            ring,
            modules,
            names,
            queries,
            residue_field,
            session,
            out,
        } => export(ring.as_deref(), modules, names, queries, *residue_field, *session, out.as_deref()),
    }
}

fn verify(ring: Option<&str>, path: &Path) -> Res<Report> {
    let mf = load_mf(path)?;
    if let Some(r) = ring {
        let expected = ring_arg(r)?;
        if !same_hypersurface(&expected, mf.ring()) {
            return Err(Failure::Domain {
                name: "MfError::RingMismatch".into(),
                message: format!("file is over {}, expected {}", mf.ring().f(), expected.f()),
            });
        }
    }
    let mut r = Report::default();
    r.set("verified", true)
        .set("f", mf.ring().f().to_string())
        .set("size", mf.size())
        .set("unit", mf.unit().to_string())
        .set("reduced", is_reduced(&mf));
    if mf.ring().factors().is_some() {
        let m = multirank(&mf).map_err(|e| Failure::domain("MfError", e))?;
        r.set("multirank", m.ranks).set("multirank_unit", m.unit.to_string());
    }
    Ok(r)
}

fn catalog(id: Option<&str>, list: bool, out: Option<&Path>) -> Res<Report> {
    let mut r = Report::default();
    if list {
        let rows: Vec<Value> = family_table()
            .into_iter()
            .map(|(id, ring, range)| Value::String(format!("{id:<16} {ring:<48} {range}")))
            .collect();
        r.set("families", rows);
        return Ok(r);
    }
    let id = id.ok_or_else(|| Failure::Parse("catalog needs a family id or --list".into()))?;
    let id: FamilyId = id.parse().map_err(|e| Failure::Parse(format!("{e}")))?;
    let mf = family(id).map_err(|e| Failure::domain("CatalogError", e))?;
    let text = mf_to_json(&mf);
    match out {
        Some(p) => {
            write(p, &text)?;
            r.set("family", id.to_string()).set("written", p.display().to_string());
        }
        None => {
            r.set("family", id.to_string())
                .set("document", serde_json::from_str::<Value>(&text).expect("valid json"));
            r.raw = Some(text);
        }
    }
    Ok(r)
}

fn certificate_fields<B: std::fmt::Display>(r: &mut Report, cert: &ReductionCertificate<B>) {
    let show = |m: &LaurentMatrix| Value::String(m.to_string());
    r.set("blocks", cert.blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>())
        .set("prec", cert.prec)
        .set("left", cert.left.iter().map(show).collect::<Vec<_>>())
        .set("right", show(&cert.right))
        .set("certificate_verified", true);
}

fn normform(sing: Singularity, input: &Path, prec: Option<i64>, out_dir: Option<&Path>) -> Res<Report> {
    let text = read(input)?;
    let nf = |e| Failure::domain("NormalFormError", e);
    let mut r = Report::default();
    let modules: Vec<(Block, BlockModule)> = match sing {
        Singularity::Dinf => {
            let theta = laurent_from_json(&text).map_err(|e| format_failure(input, e))?;
            let cert = match prec {
                Some(p) => dinf_reduce_at(&theta, p),
                None => dinf_reduce(&theta),
            }
            .map_err(nf)?;
            certificate_fields(&mut r, &cert);
            cert.blocks
                .iter()
                .map(|&b| Ok((Block::DInf(b), dinf_block_to_mf(b).map_err(nf)?)))
                .collect::<Res<_>>()?
        }
        Singularity::Ainf => {
            let (a, b) = laurent_pair_from_json(&text).map_err(|e| format_failure(input, e))?;
            let cert = match prec {
                Some(p) => ainf_reduce_at(&a, &b, p),
                None => ainf_reduce(&a, &b),
            }
            .map_err(nf)?;
            certificate_fields(&mut r, &cert);
            cert.blocks.iter().map(|&b| (Block::AInf(b), ainf_block_to_mf(b))).collect()
        }
    };
    let mut lines = Vec::new();
    for (i, (block, module)) in modules.iter().enumerate() {
        let desc = match module {
            BlockModule::Free => "free".to_string(),
            BlockModule::Factorization(mf) => {
                let mut d = format!("{0}x{0} factorization", mf.size());
                if let Some(dir) = out_dir {
                    let file = dir.join(format!("block{i}.mf"));
                    write(&file, &mf_to_json(mf))?;
                    d += &format!(" -> {}", file.display());
                }
                d
            }
        };
        lines.push(Value::String(format!("{block}: {desc}")));
    }
    r.set("modules", lines);
    if let Some(dir) = out_dir {
        let doc = serde_json::json!({
            "blocks": r.fields["blocks"],
            "prec": r.fields["prec"],
            "left": r.fields["left"],
            "right": r.fields["right"],
        });
        let path = dir.join("certificate.json");
        write(&path, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
    }
    Ok(r)
}

fn ext(i: u32, source: &Path, target: &Path, trunc: u32, auto: bool, max: u32) -> Res<Report> {
    let a = load_mf(source)?;
    let b = load_mf(target)?;
    let rep = if auto {
        ext_dim_auto(i, &a, &b, trunc, max.max(trunc + 1))
    } else {
        ext_dim(i, &a, &b, trunc)
    }
    .map_err(|e| Failure::domain("ExtError", e))?;
    let mut r = Report::default();
    r.set("index", rep.index)
        .set("dimension", rep.dimension)
        .set("orders", rep.orders.iter().map(|(t, d)| format!("T={t}: {d}")).collect::<Vec<_>>())
        .set("stabilized", rep.stabilized);
    Ok(r)
}

fn cycle(spec: &str) -> Res<Report> {
    let res = |e| Failure::domain("ResolutionError", e);
    let (g, ade): (DualGraph, bool) = match spec.parse::<AdeType>() {
        Ok(t) => (ade_graph(t).map_err(res)?.0, true),
        Err(_) if Path::new(spec).exists() => {
            let p = Path::new(spec);
            (graph_from_json(&read(p)?).map_err(|e| format_failure(p, e))?, false)
        }
        Err(_) => return Err(Failure::Parse(format!("{spec:?} is neither a graph type nor a file"))),
    };
    let m = intersection_matrix(&g);
    let rows: Vec<String> = m
        .iter()
        .map(|row| row.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" "))
        .collect();
    let mut r = Report::default();
    r.set("vertices", g.len())
        .set("matrix", rows.join("\n"))
        .set("negative_definite", is_negative_definite(&m).map_err(res)?);
    let z = fundamental_cycle(&g).map_err(res)?;
    let z2 = self_intersection(&g, &z);
    r.set("fundamental_cycle", z.0.clone())
        .set("z_squared", z2)
        .set("edim_rational", edim_rational(&g).map_err(res)?);
    if g.len() <= 4 {
        r.set("minimal_certified", certify_minimal(&g, &z));
    }
    if ade {
        r.set("claimed_z_squared", CLAIMED_SIMPLE_Z_SQUARED)
            .set("erratum", z2 != CLAIMED_SIMPLE_Z_SQUARED);
    }
    Ok(r)
}

fn group(name: &str, checks: &[String], cap: usize) -> Res<Report> {
    let gname: GroupName = name.parse().map_err(|e| Failure::Parse(format!("{e}")))?;
    for c in checks {
        if !["order", "small", "det", "gorenstein"].contains(&c.as_str()) {
            return Err(Failure::Parse(format!("unknown check {c:?}")));
        }
    }
    let g = builtin_group(gname, cap).map_err(|e| Failure::domain("GroupError", e))?;
    let mut r = Report::default();
    r.set("group", gname.to_string());
    for c in checks {
        match c.as_str() {
            "order" => {
                r.set("order", g.order());
            }
            "small" => {
                let (small, refl) = is_small(&g);
                r.set("small", small).set("pseudo_reflections", refl.len());
            }
            "det" => {
                let mut dets: Vec<String> = g.elements.iter().map(|e| e.det().to_string()).collect();
                dets.sort();
                dets.dedup();
                r.set("determinants", dets);
            }
            _ => {
                r.set("gorenstein", gorenstein_check(&g));
            }
        }
    }
    Ok(r)
}

const DEFAULT_NAMES: [&str; 6] = ["M", "N", "K", "L", "P", "Q"];

fn export(
    ring: Option<&str>,
    modules: &[std::path::PathBuf],
    names: &[String],
    queries: &[String],
    residue_field: bool,
    session: bool,
    out: Option<&Path>,
) -> Res<Report> {
    let problem = if session {
        session_problem()
    } else {
        let mfs: Vec<MatrixFactorization> = modules.iter().map(|p| load_mf(p)).collect::<Res<_>>()?;
        let ring = match (ring, mfs.first()) {
            (Some(r), _) => ring_arg(r)?,
            (None, Some(m)) => m.ring().clone(),
            (None, None) => return Err(Failure::Parse("export-singular needs --ring or a module".into())),
        };
        if let Some(m) = mfs.iter().find(|m| !same_hypersurface(m.ring(), &ring)) {
            return Err(Failure::Domain {
                name: "SingularError::Inexpressible".into(),
                message: format!("module over {} in a script over {}", m.ring().f(), ring.f()),
            });
        }
        if !names.is_empty() && names.len() != mfs.len() {
            return Err(Failure::Parse(format!("{} names for {} modules", names.len(), mfs.len())));
        }
        if names.is_empty() && mfs.len() > DEFAULT_NAMES.len() {
            return Err(Failure::Parse("more than six modules need --names".into()));
        }
        let named = mfs
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let n = names.get(i).cloned().unwrap_or_else(|| DEFAULT_NAMES[i].to_string());
                (n, m.phi().clone())
            })
            .collect();
        let queries = queries
            .iter()
            .map(|q| {
                let parts: Vec<&str> = q.split(':').collect();
                match parts.as_slice() {
                    [i, a, b] => Ok((
                        i.parse::<u32>().map_err(|_| Failure::Parse(format!("bad query {q:?}")))?,
                        a.to_string(),
                        b.to_string(),
                    )),
                    _ => Err(Failure::Parse(format!("bad query {q:?}, expected i:source:target"))),
                }
            })
            .collect::<Res<_>>()?;
        ExportProblem {
            ring,
            residue_field,
            modules: named,
            queries,
        }
    };
    let script = export_singular(&problem).map_err(|e| Failure::domain("SingularError", e))?;
    let mut r = Report::default();
    match out {
        Some(p) => {
            write(p, &script)?;
            r.set("written", p.display().to_string()).set("lines", script.lines().count());
        }
        None => {
            r.set("script", script.clone());
            r.raw = Some(script);
        }
    }
    Ok(r)
}
