//! The JSON job format.
//!
//! ```json
//! { "ring": {"vars": ["x", "y"]},
//!   "define": { "a": {"ideal": {"gens": [[2,0],[0,3]]}},
//!               "s": {"sequence": {"kind": "powers", "ideal": "a"}} },
//!   "run": { "cmd": "lct", "args": {"seq": "s"} } }
//! ```

use std::collections::BTreeMap;
use std::fmt;

use lctlab_core::newton::{minimal_generators, ExponentVector, GradedMonomialSequence, MonomialIdeal, NewtonRegion, Polyhedron};
use lctlab_core::ratlp::parse_rational;
use lctlab_core::valspace2d::{build_chain, Polynomial2, SkpChain};
use lctlab_core::Rational;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::CliError;

/// A rational written as `"p/q"`, `"n"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_rational(v).map(Rat).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

pub fn rats(v: &[Rat]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ring {
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub gens: Vec<Vec<u32>>,
}

/// A defined name or inline generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealRef {
    Name(String),
    Gens(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SequenceSpec {
    Powers { ideal: IdealRef },
    Valuation { alpha: Vec<Rat> },
    Region { points: Vec<Vec<Rat>> },
    Table { terms: Vec<IdealRef> },
    Oracle { name: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub steps: Vec<[u64; 2]>,
}

/// `c·x^i·y^j` as `[i, j, c]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    pub terms: Vec<(u32, u32, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectSpec {
    Ideal(IdealSpec),
    Sequence(SequenceSpec),
    Region { points: Vec<Vec<Rat>> },
    Chain(ChainSpec),
    Polynomial(PolynomialSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cmd: Option<String>,
    #[serde(default)]
    pub args: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub ring: Ring,
    #[serde(default)]
    pub define: BTreeMap<String, ObjectSpec>,
    pub run: RunSpec,
}

/// `a.b[2]` style paths from serde become `/a/b/2`.
fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push_str(&key.replace('~', "~0").replace('/', "~1"))
            }
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = json_pointer(e.path());
        CliError::Input(format!("{pointer}: {}", e.into_inner()))
    })
}

/// A job with every definition built.
pub struct Workspace {
    pub nvars: usize,
    pub vars: Vec<String>,
    pub ideals: BTreeMap<String, MonomialIdeal>,
    pub sequences: BTreeMap<String, GradedMonomialSequence>,
    pub regions: BTreeMap<String, Polyhedron>,
    pub chains: BTreeMap<String, SkpChain>,
    pub polynomials: BTreeMap<String, Polynomial2>,
    pub warnings: Vec<String>,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl Workspace {
    pub fn build(job: &JobSpec) -> Result<Self, CliError> {
        let nvars = job.ring.vars.len();
        if nvars == 0 {
            return Err(input("/ring/vars: at least one variable is required"));
        }
        let mut ws = Workspace {
            nvars,
            vars: job.ring.vars.clone(),
            ideals: BTreeMap::new(),
            sequences: BTreeMap::new(),
            regions: BTreeMap::new(),
            chains: BTreeMap::new(),
            polynomials: BTreeMap::new(),
            warnings: Vec::new(),
        };
        // Ideals and regions first so that sequences can refer to them.
        for (name, obj) in &job.define {
            let at = format!("/define/{name}");
            match obj {
                ObjectSpec::Ideal(spec) => {
                    let ideal = ws.ideal_from_gens(&spec.gens, &at)?;
                    ws.ideals.insert(name.clone(), ideal);
                }
                ObjectSpec::Region { points } => {
                    let p = ws.region_from_points(points, &at)?;
                    ws.regions.insert(name.clone(), p);
                }
                ObjectSpec::Chain(spec) => {
                    let steps: Vec<(u64, u64)> = spec.steps.iter().map(|s| (s[0], s[1])).collect();
                    let chain = build_chain(&steps).map_err(|e| input(format!("{at}: {e}")))?;
                    ws.chains.insert(name.clone(), chain);
                }
                ObjectSpec::Polynomial(spec) => {
                    if nvars != 2 {
                        return Err(input(format!("{at}: polynomials need a ring with two variables")));
                    }
                    let f = Polynomial2::new(spec.terms.iter().map(|(i, j, c)| ((*i, *j), c.0.clone())));
                    ws.polynomials.insert(name.clone(), f);
                }
                ObjectSpec::Sequence(_) => {}
            }
        }
        for (name, obj) in &job.define {
            if let ObjectSpec::Sequence(spec) = obj {
                let at = format!("/define/{name}/sequence");
                let seq = ws.sequence(spec, &at)?;
                ws.sequences.insert(name.clone(), seq);
            }
        }
        Ok(ws)
    }

    fn ideal_from_gens(&mut self, gens: &[Vec<u32>], at: &str) -> Result<MonomialIdeal, CliError> {
        let mut points = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            if g.len() != self.nvars {
                return Err(input(format!("{at}/gens/{k}: expected {} exponents, found {}", self.nvars, g.len())));
            }
            points.push(ExponentVector::from(g.clone()));
        }
        let ideal = minimal_generators(self.nvars, points.clone()).map_err(|e| input(format!("{at}: {e}")))?;
        if ideal.generators().len() < gens.len() {
            self.warnings
                .push(format!("{at}: generators are not an antichain; reduced to {}", ideal.display_with(&self.vars)));
        }
        Ok(ideal)
    }

    fn region_from_points(&self, points: &[Vec<Rat>], at: &str) -> Result<Polyhedron, CliError> {
        for (k, p) in points.iter().enumerate() {
            if p.len() != self.nvars {
                return Err(input(format!("{at}/points/{k}: expected {} coordinates", self.nvars)));
            }
        }
        Polyhedron::from_points(self.nvars, points.iter().map(|p| rats(p)).collect()).map_err(|e| input(format!("{at}: {e}")))
    }

    pub fn resolve_ideal(&mut self, r: &IdealRef, at: &str) -> Result<MonomialIdeal, CliError> {
        match r {
            IdealRef::Name(n) => self
                .ideals
                .get(n)
                .cloned()
                .ok_or_else(|| input(format!("{at}: no ideal named {n:?}"))),
            IdealRef::Gens(g) => self.ideal_from_gens(g, at),
        }
    }

    fn sequence(&mut self, spec: &SequenceSpec, at: &str) -> Result<GradedMonomialSequence, CliError> {
        let wrap = |e: lctlab_core::Error| input(format!("{at}: {e}"));
        match spec {
            SequenceSpec::Powers { ideal } => {
                let a = self.resolve_ideal(ideal, &format!("{at}/ideal"))?;
                GradedMonomialSequence::powers_of(a).map_err(wrap)
            }
            SequenceSpec::Valuation { alpha } => {
                if alpha.len() != self.nvars {
                    return Err(input(format!("{at}/alpha: expected {} weights", self.nvars)));
                }
                GradedMonomialSequence::valuation_ideals(rats(alpha)).map_err(wrap)
            }
            SequenceSpec::Region { points } => {
                let p = self.region_from_points(points, at)?;
                Ok(GradedMonomialSequence::region(NewtonRegion::Polyhedral(p)))
            }
            SequenceSpec::Table { terms } => {
                let mut ideals = Vec::with_capacity(terms.len());
                for (k, t) in terms.iter().enumerate() {
                    ideals.push(self.resolve_ideal(t, &format!("{at}/terms/{k}"))?);
                }
                GradedMonomialSequence::table(ideals).map_err(wrap)
            }
            SequenceSpec::Oracle { name } => {
                let region = crate::oracle_registry(name).ok_or_else(|| input(format!("{at}/name: unknown oracle {name:?}")))?;
                if region.dim() != self.nvars {
                    return Err(input(format!("{at}: oracle {name} lives in dimension {}", region.dim())));
                }
                Ok(GradedMonomialSequence::region(region))
            }
        }
    }
}
