use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use incalg_core::automorph::{
    full_decompose, induced_map, inner_table, mult_table, ordinal, verify_automorphism,
};
use incalg_core::cocycle::{AddCocycle, Mode, MultCocycle};
use incalg_core::derivation::{derivation_space, triangle_matrix};
use incalg_core::incalg::{mobius, to_structural};
use incalg_core::io::{self, DynFunction, DynTable};
use incalg_core::oracle::{
    brute_derivations, diagonalize_derivation, is_derivation, triangularize_derivation,
};
use incalg_core::poset::{isomorphisms, poset_automorphisms, LabeledOrder, Preorder, Skeleton};
use incalg_core::reduced::{
    check_order_compatible, coefficients, reduced_convolve, standard_types, ReducedElem, Reduction,
};
use incalg_core::ring::{BaseElem, RingElem, RingSpec};
use incalg_core::table::BasisTable;
use incalg_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Cli, Verb};

fn read(path: &Path) -> Result<String> {
    let mut text = String::new();
    let outcome = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    outcome.map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn required<'a, T>(v: Option<&'a T>, flag: &str) -> Result<&'a T> {
    v.ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

fn load_poset(path: &Path) -> Result<Arc<Preorder>> {
    Ok(Arc::new(io::poset_from_json(&io::from_str(&read(path)?)?)?))
}

struct CocycleInput {
    spec: RingSpec,
    mode: Mode,
    assignment: BTreeMap<(usize, usize), RingElem>,
}

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn poset(&self) -> Result<Arc<Preorder>> {
        load_poset(required(self.cli.poset.as_ref(), "poset")?)
    }

    fn ring(&self) -> Result<Option<RingSpec>> {
        self.cli.ring.as_deref().map(io::parse_ring).transpose()
    }

    fn ring_or_q(&self) -> Result<RingSpec> {
        Ok(self.ring()?.unwrap_or(RingSpec::Rationals))
    }

    fn functions(&self, p: &Arc<Preorder>) -> Result<Vec<DynFunction>> {
        let ring = self.ring()?;
        self.cli
            .functions
            .iter()
            .map(|path| io::function_from_json(p, &io::from_str(&read(path)?)?, ring.as_ref()))
            .collect()
    }

    fn function(&self, p: &Arc<Preorder>) -> Result<DynFunction> {
        match &self.functions(p)?[..] {
            [f] => Ok(f.clone()),
            fs => Err(Error::Parse(format!("expected one --fn, got {}", fs.len()))),
        }
    }

    /// Reads the cocycle file and resolves its ring and mode.
    fn cocycle_input(&self, default_ring: Option<RingSpec>) -> Result<Option<CocycleInput>> {
        let Some(path) = &self.cli.cocycle else {
            return Ok(None);
        };
        let c: io::CocycleJson = io::from_str(&read(path)?)?;
        let from_file = c.ring.as_deref().map(io::parse_ring).transpose()?;
        let spec = match (from_file, self.ring()?.or(default_ring)) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::RingSpec(format!(
                    "cocycle is over {a}, expected {b}"
                )))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => RingSpec::Rationals,
        };
        let mode = io::parse_mode(self.cli.mode.as_deref().unwrap_or(&c.mode))?;
        let assignment = io::cocycle_assignment(&c, &spec)?;
        Ok(Some(CocycleInput {
            spec,
            mode,
            assignment,
        }))
    }

    fn table(&self, source: &Arc<Preorder>, target: &Arc<Preorder>) -> Result<Option<DynTable>> {
        let Some(path) = &self.cli.table else {
            return Ok(None);
        };
        let entries: Vec<io::TableEntryJson> = io::from_str(&read(path)?)?;
        let t = io::table_from_json(source, target, &entries)?;
        if let Some(r) = self.ring()? {
            if *t.ring() != r {
                return Err(Error::RingSpec(format!(
                    "table is over {}, expected {r}",
                    t.ring()
                )));
            }
        }
        Ok(Some(t))
    }

    fn reduction(&self, p: &Arc<Preorder>) -> Result<Arc<Reduction>> {
        Ok(Arc::new(match &self.cli.partition {
            Some(path) => Reduction::from_partition(p, io::partition_from_json(&read(path)?)?)?,
            None => standard_types(p)?,
        }))
    }
}

fn parse_tau(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("--tau entry {t:?} is not an index")))
        })
        .collect()
}

fn functions_json(fs: &[DynFunction]) -> Value {
    Value::Array(fs.iter().map(|f| json!(io::function_to_json(f))).collect())
}

pub fn run(cli: &Cli) -> Result<Value> {
    let ctx = Ctx { cli };
    match cli.verb {
        Verb::PosetInfo => poset_info(&ctx),
        Verb::Mobius => {
            let p = ctx.poset()?;
            Ok(json!(io::function_to_json(&mobius(&p, &ctx.ring_or_q()?)?)))
        }
        Verb::Invert => {
            let p = ctx.poset()?;
            Ok(json!(io::function_to_json(&ctx.function(&p)?.invert()?)))
        }
        Verb::Radical => {
            let p = ctx.poset()?;
            let f = ctx.function(&p)?;
            let (l, m) = f.split();
            let level = match m.filtration_level()? {
                Some(k) => json!(k),
                None => json!("infinity"),
            };
            Ok(json!({
                "in_radical": f.in_radical(),
                "l_part": io::function_to_json(&l),
                "m_part": io::function_to_json(&m),
                "filtration_level": level,
            }))
        }
        Verb::Structmat => {
            let p = ctx.poset()?;
            let s = to_structural(&ctx.function(&p)?);
            let mut v = io::structural_json(&s);
            v["block_upper_triangular"] = json!(s.is_block_upper_triangular());
            Ok(v)
        }
        Verb::AutBuild => aut_build(&ctx),
        Verb::AutDecompose => aut_decompose(&ctx),
        Verb::AutVerify => {
            let p = ctx.poset()?;
            let target = match &cli.poset2 {
                Some(path) => load_poset(path)?,
                None => Arc::clone(&p),
            };
            let t = required(ctx.table(&p, &target)?.as_ref(), "table")?.clone();
            let ok = verify_automorphism(&t)?;
            let tau = if ok { Some(induced_map(&t)?) } else { None };
            Ok(json!({"is_automorphism": ok, "induced_map": tau}))
        }
        Verb::DerivSpace => {
            let p = ctx.poset()?;
            let center = ctx.ring_or_q()?.center();
            let q = p.quotient();
            let mut v = io::deriv_space_json(&derivation_space::<BaseElem>(q, &center)?);
            v["triangle_matrix"] = json!(triangle_matrix::<BaseElem>(q, &center)?.entries);
            v["field"] = json!(center.to_string());
            Ok(v)
        }
        Verb::DerivDecompose => deriv_decompose(&ctx),
        Verb::DerivOracle => {
            let p = ctx.poset()?;
            let r = brute_derivations::<RingElem>(&p, &ctx.ring_or_q()?)?;
            Ok(json!({
                "dim_k": r.dim_k,
                "dim_center": r.dim_center,
                "dim_der": r.dim_der,
                "dim_inn": r.dim_inn,
                "dim_out": r.dim_out,
                "basis": r.basis.iter().map(io::table_to_json).collect::<Vec<_>>(),
            }))
        }
        Verb::ReducedTypes => {
            let p = ctx.poset()?;
            let red = ctx.reduction(&p)?;
            Ok(json!({
                "types": io::types_json(&red),
                "compatibility": io::compatibility_json(&check_order_compatible(&red)),
            }))
        }
        Verb::ReducedCoeffs => {
            let p = ctx.poset()?;
            let red = ctx.reduction(&p)?;
            Ok(json!({
                "types": io::types_json(&red),
                "coefficients": io::coefficients_json(&coefficients(&red)?),
            }))
        }
        Verb::ReducedMul => {
            let p = ctx.poset()?;
            let red = ctx.reduction(&p)?;
            let fs = ctx.functions(&p)?;
            let [f, g] = &fs[..] else {
                return Err(Error::Parse(format!("expected two --fn, got {}", fs.len())));
            };
            let table = coefficients(&red)?;
            let a = ReducedElem::project(&red, f)?;
            let b = ReducedElem::project(&red, g)?;
            let h = reduced_convolve(&a, &b, &table)?;
            Ok(json!({
                "values": h.values().iter().map(RingElem::to_json).collect::<Vec<_>>(),
                "product": io::function_to_json(&h.lift()),
            }))
        }
    }
}

fn poset_info(ctx: &Ctx) -> Result<Value> {
    let p = ctx.poset()?;
    let q = p.quotient();
    let sk = Skeleton::new(q);
    let automorphisms = match poset_automorphisms(q) {
        Ok(a) => json!(a),
        Err(Error::TooLarge { .. }) => Value::Null,
        Err(e) => return Err(e),
    };
    let mut v = json!({
        "poset": io::poset_to_json(&p),
        "is_poset": p.is_poset(),
        "classes": q.classes(),
        "edges": sk.graph.edges(),
        "m": sk.graph.m(),
        "components": sk.graph.components(),
        "connected": sk.graph.is_connected(),
        "lambda": sk.graph.lambda(),
        "max_length": q.max_length(),
        "triangles": sk.triangles.iter().map(|t| [t.x, t.z, t.y]).collect::<Vec<_>>(),
        "fundamental_cycles": sk.forest.fundamental_cycles().iter()
            .map(|c| json!({"chord": c.chord, "walk": c.walk}))
            .collect::<Vec<_>>(),
        "automorphisms": automorphisms,
    });
    if let Some(path) = &ctx.cli.poset2 {
        let p2 = load_poset(path)?;
        let isos = isomorphisms(
            &LabeledOrder::from_quotient(q),
            &LabeledOrder::from_quotient(p2.quotient()),
            None,
        );
        v["isomorphic"] = json!(!isos.is_empty());
        v["isomorphisms"] = json!(isos);
    }
    Ok(v)
}

fn aut_build(ctx: &Ctx) -> Result<Value> {
    let p = ctx.poset()?;
    let unit = if ctx.cli.functions.is_empty() {
        None
    } else {
        Some(ctx.function(&p)?)
    };
    let fn_ring = unit.as_ref().map(|u| *u.ring());
    let cocycle = ctx.cocycle_input(fn_ring)?;
    let spec = fn_ring
        .or(cocycle.as_ref().map(|c| c.spec))
        .map_or_else(|| ctx.ring_or_q(), Ok)?;
    let mut table = match &ctx.cli.tau {
        Some(t) => ordinal(&parse_tau(t)?, &p, &spec)?,
        None => BasisTable::identity(&p, &spec)?,
    };
    if let Some(input) = cocycle {
        let sk = Arc::new(Skeleton::new(p.quotient()));
        let c = MultCocycle::new(&sk, &spec, &input.assignment, input.mode)?;
        table = mult_table(&c, &p)?.compose(&table)?;
    }
    if let Some(u) = unit {
        table = inner_table(&u)?.compose(&table)?;
    }
    Ok(json!(io::table_to_json(&table)))
}

fn aut_decompose(ctx: &Ctx) -> Result<Value> {
    let p = ctx.poset()?;
    if let Some(t) = ctx.table(&p, &p)? {
        return Ok(io::aut_decomposition_json(&full_decompose(&t)?));
    }
    let input = ctx
        .cocycle_input(None)?
        .ok_or_else(|| Error::Parse("missing --table or --cocycle".into()))?;
    let sk = Arc::new(Skeleton::new(p.quotient()));
    let c = MultCocycle::new(&sk, &input.spec, &input.assignment, input.mode)?;
    Ok(io::cocycle_decomposition_json(&c.decompose()?))
}

fn deriv_decompose(ctx: &Ctx) -> Result<Value> {
    let p = ctx.poset()?;
    if let Some(d) = ctx.table(&p, &p)? {
        let ok = is_derivation(&d)?;
        let t = triangularize_derivation(&d)?;
        let (g, diag) = diagonalize_derivation(&d)?;
        return Ok(json!({
            "is_derivation": ok,
            "alpha": functions_json(&t.alpha),
            "delta": functions_json(&t.delta),
            "beta": t.beta.iter()
                .map(|(b, f)| json!({"basis": b.to_string(), "image": io::function_to_json(f)}))
                .collect::<Vec<_>>(),
            "g": io::function_to_json(&g),
            "diagonal": io::table_to_json(&diag),
        }));
    }
    let input = ctx
        .cocycle_input(None)?
        .ok_or_else(|| Error::Parse("missing --table or --cocycle".into()))?;
    let sk = Arc::new(Skeleton::new(p.quotient()));
    let c = AddCocycle::new(&sk, &input.spec, &input.assignment, input.mode)?;
    Ok(io::cocycle_decomposition_json(&c.decompose()?))
}
