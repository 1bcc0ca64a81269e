//! JSON file formats: category files and generation certificates.
//!
//! Operation inputs are listed in boundary order `x_1, ..., x_d`, where `x_1`
//! is applied first. So `mu^2(a2, a1)` is written `"inputs": ["a1", "a2"]`.
//! Generator names may be qualified as `SRC->TGT:name` and must be when the
//! plain name occurs in more than one hom space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use ainfty::ainf::{AinfCategory, CategoryError, Chain, GenId, ObjId};
use ainfty::fixtures::Coproduct;
use ainfty::linalg::Ring;
use ainfty::modules::{diagonal_bimodule, tensor_bimodule, yoneda_module, BimodKey, BimoduleHom, Side};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub format: u32,
    #[serde(default = "default_ring")]
    pub ring: String,
    pub objects: Vec<String>,
    pub homs: Vec<HomTable>,
    /// Keyed by arity.
    #[serde(default)]
    pub operations: BTreeMap<String, Vec<OperationTerm>>,
    /// Object name to unit chain (generator name to coefficient).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub units: BTreeMap<String, BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproduct: Option<CoproductTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cardy: Option<CardyTable>,
}

fn default_ring() -> String {
    "Z".into()
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HomTable {
    pub source: String,
    pub target: String,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OperationTerm {
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: i64,
}

/// Bimodule map from the diagonal of `subcategory` to `Y^l_K ⊗ Y^r_K`.
///
/// `left` lists `a_1, ..., a_r` and `right` lists `a_{|s}, ..., a_{|1}`, both
/// in composition order. Outputs are named `x⊗y` with `x` in `hom(K, -)`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoproductTable {
    pub object: String,
    pub subcategory: Vec<String>,
    /// Defaults to the top-level `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub terms: Vec<CoproductTerm>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoproductTerm {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<String>,
    pub input: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<String>,
    pub output: String,
    pub coeff: i64,
}

/// Closed-string side of a Cardy check. Maps are sparse entry lists between
/// basis labels; `CC` labels are words `a_d⊗...⊗a_1`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CardyTable {
    #[serde(default)]
    pub closed: ClosedSpec,
    #[serde(default = "telescoping")]
    pub oc: MapSpec,
    #[serde(default = "identity")]
    pub co: MapSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homotopy: Option<Vec<MapEntry>>,
}

fn telescoping() -> MapSpec {
    MapSpec::Named("telescoping".into())
}

fn identity() -> MapSpec {
    MapSpec::Named("identity".into())
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum ClosedSpec {
    /// `"hom"`: the endomorphism complex of the object.
    Named(String),
    Complex {
        basis: BTreeMap<String, Vec<String>>,
        #[serde(default)]
        differential: Vec<MapEntry>,
    },
}

impl Default for ClosedSpec {
    fn default() -> Self {
        ClosedSpec::Named("hom".into())
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum MapSpec {
    /// `"telescoping"`, `"identity"` or `"zero"`.
    Named(String),
    Entries(Vec<MapEntry>),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub from: String,
    pub to: String,
    pub coeff: i64,
}

/// A schema or semantic error at a JSON path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

fn err(path: impl Into<String>, message: impl fmt::Display) -> SchemaError {
    SchemaError {
        path: path.into(),
        message: message.to_string(),
    }
}

pub fn parse_ring(tag: &str) -> Option<Ring> {
    match tag {
        "Z" => Some(Ring::Integers),
        "F2" => Some(Ring::F2),
        _ => None,
    }
}

/// Parses JSON text, reporting syntax and type errors with line, column and path.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let path = if path == "." { String::new() } else { path };
        err(path, format!("{inner}"))
    })
}

/// A category file resolved against its own category.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub file: CategoryFile,
    pub category: AinfCategory,
    pub coproduct: Option<Coproduct>,
}

impl Loaded {
    pub fn digest(&self) -> String {
        let mut f = self.file.clone();
        f.ring = self.category.ring().tag().into();
        digest_of(&f)
    }
}

pub fn digest_of<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable");
    let hash = Sha256::digest(&bytes);
    format!("sha256:{}", hex::encode(&hash[..16]))
}

/// Digest of the category alone, in canonical form.
pub fn category_digest(c: &AinfCategory) -> String {
    digest_of(&export_category(c))
}

pub fn load_category_file(file: CategoryFile, ring_override: Option<Ring>) -> Result<Loaded, SchemaError> {
    if file.format != FORMAT_VERSION {
        return Err(err("format", format!("unsupported format version {} (expected {FORMAT_VERSION})", file.format)));
    }
    let ring = match ring_override {
        Some(r) => r,
        None => parse_ring(&file.ring).ok_or_else(|| err("ring", format!("unknown ring `{}` (use Z or F2)", file.ring)))?,
    };
    let mut b = AinfCategory::builder(ring);
    for (i, o) in file.objects.iter().enumerate() {
        b.object(o);
        b.check().map_err(|e| err(format!("objects[{i}]"), e))?;
    }
    for (i, h) in file.homs.iter().enumerate() {
        for (side, name) in [("source", &h.source), ("target", &h.target)] {
            if !file.objects.contains(name) {
                return Err(err(format!("homs[{i}].{side}"), format!("undeclared object `{name}`")));
            }
        }
        for (j, g) in h.generators.iter().enumerate() {
            b.generator(&h.source, &h.target, &g.name, g.degree);
            b.check().map_err(|e| err(format!("homs[{i}].generators[{j}]"), e))?;
        }
    }
    let skeleton = b.build().map_err(|e| err("", e))?;
    let find = |path: String, name: &str| -> Result<GenId, SchemaError> {
        skeleton.find_generator(name).map_err(|e| match e {
            CategoryError::UnknownGenerator(_) => err(path, format!("undeclared generator `{name}`")),
            e => err(path, e),
        })
    };
    for (key, terms) in &file.operations {
        let base = format!("operations.{key}");
        let arity: usize = key
            .parse()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| err(&base, "operation tables are keyed by an arity >= 1"))?;
        for (j, t) in terms.iter().enumerate() {
            let path = format!("{base}[{j}]");
            if t.inputs.len() != arity {
                return Err(err(
                    format!("{path}.inputs"),
                    format!("expected {arity} inputs, found {}", t.inputs.len()),
                ));
            }
            let inputs = t
                .inputs
                .iter()
                .enumerate()
                .map(|(k, name)| find(format!("{path}.inputs[{k}]"), name))
                .collect::<Result<Vec<_>, _>>()?;
            let output = find(format!("{path}.output"), &t.output)?;
            b.term_ids(inputs, output, BigInt::from(t.coeff));
            b.check().map_err(|e| err(&path, e))?;
        }
    }
    for (obj, chain) in &file.units {
        let path = format!("units.{obj}");
        let o = skeleton.object_id(obj).map_err(|_| err(&path, format!("undeclared object `{obj}`")))?;
        let mut c = Chain::new();
        for (name, v) in chain {
            c.add_term(find(format!("{path}.{name}"), name)?, BigInt::from(*v));
        }
        b.unit_chain(o, c);
        b.check().map_err(|e| err(&path, e))?;
    }
    let category = b.build().map_err(|e| err("", e))?;
    let coproduct = match &file.coproduct {
        Some(t) => Some(load_coproduct(&category, t, file.n)?),
        None => None,
    };
    Ok(Loaded { file, category, coproduct })
}

fn resolve_objects(c: &AinfCategory, path: &str, names: &[String]) -> Result<BTreeSet<ObjId>, SchemaError> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| c.object_id(n).map_err(|_| err(format!("{path}[{i}]"), format!("undeclared object `{n}`"))))
        .collect()
}

fn load_coproduct(c: &AinfCategory, t: &CoproductTable, n: Option<i64>) -> Result<Coproduct, SchemaError> {
    let object = c
        .object_id(&t.object)
        .map_err(|_| err("coproduct.object", format!("undeclared object `{}`", t.object)))?;
    let subcategory = resolve_objects(c, "coproduct.subcategory", &t.subcategory)?;
    if subcategory.is_empty() {
        return Err(err("coproduct.subcategory", "subcategory is empty"));
    }
    let degree = t
        .degree
        .or(n)
        .ok_or_else(|| err("coproduct.degree", "no degree given and no top-level n"))?;
    let diag = diagonal_bimodule(c, &subcategory).map_err(|e| err("coproduct", e))?;
    let left = yoneda_module(c, object, Side::Left, &subcategory).map_err(|e| err("coproduct", e))?;
    let right = yoneda_module(c, object, Side::Right, &subcategory).map_err(|e| err("coproduct", e))?;
    let target = tensor_bimodule(&left, &right).map_err(|e| err("coproduct", e))?;
    let mut delta = BimoduleHom::new(degree);
    let gens = |path: String, names: &[String]| -> Result<Vec<GenId>, SchemaError> {
        names
            .iter()
            .enumerate()
            .map(|(k, name)| {
                let g = c.find_generator(name).map_err(|e| err(format!("{path}[{k}]"), e))?;
                if subcategory.contains(&c.source(g)) && subcategory.contains(&c.target(g)) {
                    Ok(g)
                } else {
                    Err(err(format!("{path}[{k}]"), format!("`{name}` is not a morphism of the subcategory")))
                }
            })
            .collect()
    };
    for (i, term) in t.terms.iter().enumerate() {
        let path = format!("coproduct.terms[{i}]");
        let right_in = gens(format!("{path}.right"), &term.right)?;
        let left_in = gens(format!("{path}.left"), &term.left)?;
        let p = c
            .find_generator(&term.input)
            .ok()
            .and_then(|g| diag.find(&c.qualified_name(g)))
            .ok_or_else(|| err(format!("{path}.input"), format!("`{}` is not a generator of the diagonal bimodule", term.input)))?;
        let out = target
            .find(&term.output)
            .ok_or_else(|| err(format!("{path}.output"), format!("`{}` is not a generator of the tensor bimodule", term.output)))?;
        delta.add(BimodKey::new(right_in, p, left_in), out, BigInt::from(term.coeff));
    }
    delta.check_degrees(c, &diag, &target).map_err(|e| err("coproduct.terms", e))?;
    Ok(Coproduct {
        name: "file".into(),
        category: c.clone(),
        object,
        subcategory,
        delta,
    })
}

fn chain_table(c: &AinfCategory, chain: &Chain) -> BTreeMap<String, i64> {
    chain
        .iter()
        .map(|(&g, v)| (c.qualified_name(g), small(v)))
        .collect()
}

/// Coefficients written to files; the shipped data stays far inside `i64`.
pub fn small(v: &BigInt) -> i64 {
    v.to_i64().expect("coefficient fits in i64")
}

pub fn export_category(c: &AinfCategory) -> CategoryFile {
    let mut homs = Vec::new();
    for a in 0..c.objects().len() {
        for b in 0..c.objects().len() {
            let gens = c.hom(a, b);
            if !gens.is_empty() {
                homs.push(HomTable {
                    source: c.object_name(a).into(),
                    target: c.object_name(b).into(),
                    generators: gens
                        .iter()
                        .map(|&g| GeneratorEntry {
                            name: c.name(g).into(),
                            degree: c.degree(g),
                        })
                        .collect(),
                });
            }
        }
    }
    let mut operations = BTreeMap::new();
    for d in c.arities() {
        let terms: Vec<OperationTerm> = c
            .mu(d)
            .unwrap()
            .term_list()
            .into_iter()
            .map(|(inputs, out, v)| OperationTerm {
                inputs: inputs.iter().map(|&g| c.qualified_name(g)).collect(),
                output: c.qualified_name(out),
                coeff: small(&v),
            })
            .collect();
        if !terms.is_empty() {
            operations.insert(d.to_string(), terms);
        }
    }
    let units = c
        .units()
        .iter()
        .map(|(&o, e)| (c.object_name(o).to_string(), chain_table(c, e)))
        .collect();
    CategoryFile {
        format: FORMAT_VERSION,
        ring: c.ring().tag().into(),
        objects: c.objects().to_vec(),
        homs,
        operations,
        units,
        n: None,
        coproduct: None,
        cardy: None,
    }
}

pub fn export_coproduct(cp: &Coproduct) -> CoproductTable {
    let c = &cp.category;
    let diag = cp.diagonal();
    let target = cp.target();
    let names = |v: &[GenId]| v.iter().map(|&g| c.qualified_name(g)).collect::<Vec<_>>();
    let mut terms = Vec::new();
    for (key, chain) in cp.delta.components() {
        for (&o, v) in chain.iter() {
            let input = match diag.generator(key.p).origin {
                ainfty::modules::BimodOrigin::Morphism(g) => c.qualified_name(g),
                _ => diag.generator(key.p).name.clone(),
            };
            terms.push(CoproductTerm {
                right: names(&key.right),
                input,
                left: names(&key.left),
                output: target.generator(o).name.clone(),
                coeff: small(v),
            });
        }
    }
    CoproductTable {
        object: c.object_name(cp.object).into(),
        subcategory: cp.subcategory.iter().map(|&o| c.object_name(o).to_string()).collect(),
        degree: Some(cp.degree()),
        terms,
    }
}

/// Serialized generation certificate. The universal twisted complex is rebuilt
/// on replay and compared by summand count.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format: u32,
    pub kind: String,
    pub category_digest: String,
    pub verdict: String,
    pub object: String,
    pub subcategory: Vec<String>,
    pub max_length: usize,
    pub unit: BTreeMap<String, i64>,
    /// Words `p ⊗ a_d ⊗ ... ⊗ a_1 ⊗ q`; `a` in composition order.
    pub tau: Vec<TauTerm>,
    pub h: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal_summands: Option<usize>,
}

pub const CERTIFICATE_KIND: &str = "generation-certificate";

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TauTerm {
    pub p: String,
    pub a: Vec<String>,
    pub q: String,
    pub coeff: i64,
}

pub fn export_chain(c: &AinfCategory, chain: &Chain) -> BTreeMap<String, i64> {
    chain_table(c, chain)
}

pub fn import_chain(c: &AinfCategory, path: &str, table: &BTreeMap<String, i64>) -> Result<Chain, SchemaError> {
    let mut out = Chain::new();
    for (name, v) in table {
        let g = c.find_generator(name).map_err(|e| err(format!("{path}.{name}"), e))?;
        out.add_term(g, BigInt::from(*v));
    }
    Ok(out)
}

pub fn object_names(c: &AinfCategory, b: &BTreeSet<ObjId>) -> Vec<String> {
    b.iter().map(|&o| c.object_name(o).to_string()).collect()
}

pub fn resolve_object_list(c: &AinfCategory, path: &str, names: &[String]) -> Result<BTreeSet<ObjId>, SchemaError> {
    resolve_objects(c, path, names)
}
