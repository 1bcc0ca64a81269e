use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use ainfty::ainf::{format_lincomb, verify_ainf, AinfCategory, Chain, GenId, ObjId};
use ainfty::cardy::{
    solve_homotopy, verify_cardy_on_homology, verify_homotopy_equation, CardyError, CardySetup, HomotopySolution,
    HomotopyWitness, OpenClosedData,
};
use ainfty::fixtures;
use ainfty::generation::{
    build_universal_complex, generation_test, replay_certificate, verify_cohomological_unit, GenerationCertificate,
    GenerationError, Verdict,
};
use ainfty::hochschild::hochschild_homology;
use ainfty::linalg::{ChainComplex, GradedMap, IntMatrix, Ring};
use ainfty::modules::{
    all_objects, verify_bimodule_hom, word_label, yoneda_module, BimodKey, Side, SideModule, TensorWord,
};
use ainfty::strata::{
    dimension, enumerate_codim1, sign_formula, strata_term_bijection, Equation, SpaceId, StrataError, SIGN_TAGS,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::Report;
use crate::schema::{
    category_digest, export_category, export_chain, export_coproduct, import_chain, load_category_file, object_names,
    parse_json, resolve_object_list, small, CardyTable, CategoryFile, CertificateFile, ClosedSpec, Loaded, MapEntry,
    MapSpec, TauTerm, CERTIFICATE_KIND, FORMAT_VERSION,
};

/// Problems with the input rather than with the mathematics (exit code 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl<T: std::fmt::Display> From<T> for InputError {
    fn from(e: T) -> Self {
        InputError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InputError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path, ring: Option<Ring>) -> Result<Loaded> {
    let text = read(path)?;
    let file: CategoryFile = parse_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    load_category_file(file, ring).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Parses `a..b` (inclusive).
pub fn parse_degrees(s: &str) -> Result<(i64, i64)> {
    let bad = || InputError(format!("--degrees expects a..b, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(InputError(format!("--degrees range {a}..{b} is empty")));
    }
    Ok((a, b))
}

fn names(c: &AinfCategory, gs: &[GenId]) -> Vec<String> {
    gs.iter().map(|&g| c.qualified_name(g)).collect()
}

fn subcategory_or_all(c: &AinfCategory, list: &[String]) -> Result<BTreeSet<ObjId>> {
    if list.is_empty() {
        Ok(all_objects(c))
    } else {
        Ok(resolve_object_list(c, "--subcategory", list)?)
    }
}

/// Bimodule input `a_r, ..., a_1 ; p ; a_{|1}, ..., a_{|s}` in printed order.
fn key_label(c: &AinfCategory, p_name: &str, key: &BimodKey) -> String {
    let left: Vec<String> = key.left.iter().rev().map(|&g| c.qualified_name(g)).collect();
    let right: Vec<String> = key.right.iter().rev().map(|&g| c.qualified_name(g)).collect();
    format!("({}; {}; {})", left.join(", "), p_name, right.join(", "))
}

pub fn validate(path: &Path, ring: Option<Ring>, max_arity: usize, bimodule_inputs: usize, cert: Option<&Path>) -> Result<Report> {
    let loaded = load(path, ring)?;
    let c = &loaded.category;
    let mut rep = Report::new("validate");
    rep.input_digest = Some(loaded.digest());
    rep.line(format!(
        "schema: ok ({} objects, {} generators, ring {})",
        c.objects().len(),
        c.generators().len(),
        c.ring().tag()
    ));

    let a = verify_ainf(c, max_arity);
    rep.line(format!(
        "a-infinity relations (d <= {max_arity}): {} tuples, {} failures",
        a.tuples_checked,
        a.failures.len()
    ));
    let mut fails = Vec::new();
    for f in &a.failures {
        let inputs = names(c, &f.inputs);
        let residual = c.format_chain(&f.residual);
        if fails.len() < 5 {
            rep.witness(format!("relation on ({}) = {residual}", inputs.join(", ")));
        }
        fails.push(json!({"inputs": inputs, "residual": residual}));
    }
    rep.detail(
        "ainf",
        json!({"up_to": max_arity, "tuples_checked": a.tuples_checked, "failures": fails}),
    );
    if !a.passed() {
        rep.fail();
    }

    let mut units = Vec::new();
    for (&o, e) in c.units() {
        let name = c.object_name(o);
        match verify_cohomological_unit(c, o, e) {
            Ok(u) if u.passed() => {
                rep.line(format!("unit of {name}: ok"));
                units.push(json!({"object": name, "passed": true}));
            }
            Ok(u) => {
                rep.line(format!("unit of {name}: fails"));
                for f in &u.failures {
                    let space = match f.side {
                        Side::Left => format!("hom({name}, {})", c.object_name(f.other)),
                        Side::Right => format!("hom({}, {name})", c.object_name(f.other)),
                    };
                    rep.witness(format!("unit of {name} is not the identity on H^{} {space}", f.degree));
                }
                units.push(json!({"object": name, "passed": false}));
                rep.fail();
            }
            Err(err) => {
                rep.line(format!("unit of {name}: fails"));
                rep.witness(format!("unit of {name}: {err}"));
                units.push(json!({"object": name, "passed": false}));
                rep.fail();
            }
        }
    }
    rep.detail("units", Value::Array(units));

    if let Some(cp) = &loaded.coproduct {
        let diag = cp.diagonal();
        let target = cp.target();
        let h = verify_bimodule_hom(c, &diag, &target, &cp.delta, bimodule_inputs);
        rep.line(format!(
            "coproduct of degree {} (r + s <= {bimodule_inputs}): {} inputs, {} failures",
            cp.degree(),
            h.tuples_checked,
            h.failures.len()
        ));
        for f in h.failures.iter().take(5) {
            let residual = format_lincomb(&f.residual, |&o| target.generator(o).name.clone());
            rep.witness(format!(
                "coproduct relation on {} = {residual}",
                key_label(c, &diag.generator(f.key.p).name, &f.key)
            ));
        }
        rep.detail(
            "coproduct",
            json!({"max_inputs": bimodule_inputs, "tuples_checked": h.tuples_checked, "failures": h.failures.len()}),
        );
        if !h.passed() {
            rep.fail();
        }
    }

    if let Some(cert_path) = cert {
        let cert: CertificateFile =
            parse_json(&read(cert_path)?).map_err(|e| InputError(format!("{}: {e}", cert_path.display())))?;
        replay_into(&loaded, &cert, &mut rep)?;
    }
    Ok(rep)
}

pub fn hh(path: &Path, ring: Option<Ring>, max_length: usize, degrees: Option<(i64, i64)>, sub: &[String]) -> Result<Report> {
    if max_length == 0 {
        return Err(InputError("--max-length must be at least 1".into()));
    }
    let loaded = load(path, ring)?;
    let c = &loaded.category;
    let b = subcategory_or_all(c, sub)?;
    let mut rep = Report::new("hh");
    rep.input_digest = Some(loaded.digest());
    rep.line(format!(
        "subcategory: {}; ring {}; words of length <= {max_length}",
        object_names(c, &b).join(", "),
        c.ring().tag()
    ));
    let hh = match hochschild_homology(c, &b, max_length, degrees) {
        Ok(hh) => hh,
        Err(e) => {
            rep.witness(e.to_string());
            rep.fail();
            return Ok(rep);
        }
    };
    let mut groups = Vec::new();
    for (k, g) in &hh.groups {
        let stable = hh.stable[k];
        rep.line(format!("degree {k}: {g}{}", if stable { " (stable)" } else { " (not stable)" }));
        groups.push(json!({
            "degree": k,
            "group": g.to_string(),
            "free_rank": g.free_rank,
            "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "stable": stable,
        }));
    }
    rep.detail("max_length", json!(max_length));
    rep.detail("subcategory", json!(object_names(c, &b)));
    rep.detail("ring", json!(c.ring().tag()));
    rep.detail("groups", Value::Array(groups));
    Ok(rep)
}

fn default_object(loaded: &Loaded, object: Option<&str>) -> Result<ObjId> {
    let c = &loaded.category;
    match object {
        Some(o) => Ok(c.object_id(o)?),
        None => match (&loaded.coproduct, c.objects().len()) {
            (Some(cp), _) => Ok(cp.object),
            (None, 1) => Ok(0),
            _ => Err(InputError("--object is required when the file has several objects".into())),
        },
    }
}

fn module_gen_of(m: &SideModule, g: GenId) -> Option<usize> {
    m.generators().iter().position(|x| x.cat_gen == Some(g))
}

fn tau_label(c: &AinfCategory, r: &SideModule, l: &SideModule, w: &TensorWord) -> String {
    word_label(c, r, l, w)
}

fn chain_text(c: &AinfCategory, x: &Chain) -> String {
    if x.is_zero() {
        "0".into()
    } else {
        c.format_chain(x)
    }
}

pub fn generate(
    path: &Path,
    ring: Option<Ring>,
    object: Option<&str>,
    sub: &[String],
    max_length: usize,
    out: Option<&Path>,
) -> Result<Report> {
    let loaded = load(path, ring)?;
    let c = &loaded.category;
    let k = default_object(&loaded, object)?;
    let b = subcategory_or_all(c, sub)?;
    let e = c
        .unit(k)
        .cloned()
        .ok_or_else(|| InputError(format!("no unit declared for `{}`", c.object_name(k))))?;
    let mut rep = Report::new("generate");
    rep.input_digest = Some(loaded.digest());
    rep.line(format!(
        "object: {}; subcategory: {}; length <= {max_length}",
        c.object_name(k),
        object_names(c, &b).join(", ")
    ));
    let cert = match generation_test(c, &b, k, &e, max_length) {
        Ok(cert) => cert,
        Err(err @ (GenerationError::NotAUnit(_) | GenerationError::NotACycle(_))) => {
            rep.witness(err.to_string());
            rep.fail();
            return Ok(rep);
        }
        Err(err) => return Err(err.into()),
    };
    let (r, l) = (
        yoneda_module(c, k, Side::Right, &b)?,
        yoneda_module(c, k, Side::Left, &b)?,
    );
    match cert.verdict {
        Verdict::Generated => rep.verdict = "generated".into(),
        Verdict::Inconclusive { bound } => {
            rep.passed = false;
            rep.verdict = "inconclusive".into();
            rep.line(format!("no cycle of length <= {bound} hits the unit class"));
        }
        Verdict::RefutedAtBound { bound } => {
            rep.passed = false;
            rep.verdict = "refuted-at-bound".into();
            rep.line(format!("the unit class is hit over Q but not over Z at length <= {bound}"));
        }
    }
    if cert.is_generated() {
        let tau = format_lincomb(&cert.tau, |w| tau_label(c, &r, &l, w));
        rep.line(format!("tau = {}", if cert.tau.is_zero() { "0".into() } else { tau }));
        rep.line(format!("h = {}", chain_text(c, &cert.h)));
        let file = certificate_file(c, &r, &l, &cert);
        if let Some(n) = file.universal_summands {
            rep.line(format!("universal complex: {n} summands"));
        }
        let text = serde_json::to_string_pretty(&file)? + "\n";
        if let Some(out) = out {
            fs::write(out, &text).map_err(|e| InputError(format!("{}: {e}", out.display())))?;
            rep.line(format!("certificate written to {}", out.display()));
        }
        rep.detail("certificate", serde_json::to_value(&file)?);
    }
    Ok(rep)
}

fn certificate_file(c: &AinfCategory, r: &SideModule, l: &SideModule, cert: &GenerationCertificate) -> CertificateFile {
    let tau = cert
        .tau
        .iter()
        .map(|(w, v)| TauTerm {
            p: c.qualified_name(r.generator(w.p).cat_gen.expect("Yoneda generator")),
            a: names(c, &w.a),
            q: c.qualified_name(l.generator(w.q).cat_gen.expect("Yoneda generator")),
            coeff: small(v),
        })
        .collect();
    CertificateFile {
        format: FORMAT_VERSION,
        kind: CERTIFICATE_KIND.into(),
        category_digest: category_digest(c),
        verdict: "generated".into(),
        object: c.object_name(cert.object).into(),
        subcategory: object_names(c, &cert.subcategory),
        max_length: cert.max_length,
        unit: export_chain(c, &cert.unit),
        tau,
        h: export_chain(c, &cert.h),
        universal_summands: cert.universal.as_ref().map(|u| u.words.len()),
    }
}

/// Rebuilds the certificate against `loaded` and replays it into `rep`.
fn replay_into(loaded: &Loaded, file: &CertificateFile, rep: &mut Report) -> Result<()> {
    let c = &loaded.category;
    if file.format != FORMAT_VERSION || file.kind != CERTIFICATE_KIND {
        return Err(InputError(format!(
            "certificate: expected format {FORMAT_VERSION} of kind `{CERTIFICATE_KIND}`"
        )));
    }
    if file.category_digest != category_digest(c) {
        return Err(InputError("certificate: category digest does not match the category file".into()));
    }
    let k = c.object_id(&file.object)?;
    let b = resolve_object_list(c, "subcategory", &file.subcategory)?;
    let (r, l) = (
        yoneda_module(c, k, Side::Right, &b)?,
        yoneda_module(c, k, Side::Left, &b)?,
    );
    let mut tau = ainfty::ainf::LinComb::new();
    for (i, t) in file.tau.iter().enumerate() {
        let find = |name: &str, m: &SideModule, what: &str| -> Result<usize> {
            let g = c.find_generator(name).map_err(|e| InputError(format!("certificate: tau[{i}].{what}: {e}")))?;
            module_gen_of(m, g)
                .ok_or_else(|| InputError(format!("certificate: tau[{i}].{what}: `{name}` is not in the Yoneda module")))
        };
        let a = t
            .a
            .iter()
            .map(|x| c.find_generator(x).map_err(|e| InputError(format!("certificate: tau[{i}].a: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let w = TensorWord {
            p: find(&t.p, &r, "p")?,
            a,
            q: find(&t.q, &l, "q")?,
        };
        tau.add_term(w, BigInt::from(t.coeff));
    }
    let mut cert = GenerationCertificate {
        verdict: if file.verdict == "generated" {
            Verdict::Generated
        } else {
            Verdict::Inconclusive { bound: file.max_length }
        },
        object: k,
        subcategory: b.clone(),
        unit: import_chain(c, "certificate: unit", &file.unit)?,
        max_length: file.max_length,
        tau,
        h: import_chain(c, "certificate: h", &file.h)?,
        universal: None,
    };
    let outcome = match file.universal_summands {
        Some(n) => match build_universal_complex(c, &b, k, file.max_length) {
            Ok(u) if u.words.len() == n => {
                cert.universal = Some(u);
                replay_certificate(c, &cert).map_err(|e| e.to_string())
            }
            Ok(u) => Err(format!("universal complex has {} summands, certificate says {n}", u.words.len())),
            Err(e) => Err(e.to_string()),
        },
        None => Err("certificate carries no universal complex".into()),
    };
    match outcome {
        Ok(()) => rep.line("certificate: replays"),
        Err(msg) => {
            rep.line("certificate: does not replay");
            rep.witness(msg);
            rep.fail();
        }
    }
    Ok(())
}

pub fn replay(path: &Path, cert_path: &Path) -> Result<Report> {
    let loaded = load(path, None)?;
    let cert: CertificateFile =
        parse_json(&read(cert_path)?).map_err(|e| InputError(format!("{}: {e}", cert_path.display())))?;
    let mut rep = Report::new("replay");
    rep.input_digest = Some(loaded.digest());
    replay_into(&loaded, &cert, &mut rep)?;
    Ok(rep)
}

fn label_index(cx: &ChainComplex) -> BTreeMap<String, (i64, usize)> {
    let mut m = BTreeMap::new();
    for k in cx.degrees() {
        for (i, s) in cx.basis(k).iter().enumerate() {
            m.insert(s.clone(), (k, i));
        }
    }
    m
}

/// Sparse entries to a graded map of degree `shift`. Source labels that are
/// words longer than `skip_longer` are outside the truncation and ignored.
fn build_map(
    which: &str,
    entries: &[MapEntry],
    src: &ChainComplex,
    tgt: &ChainComplex,
    shift: i64,
    skip_longer: Option<usize>,
) -> Result<GradedMap> {
    let si = label_index(src);
    let ti = label_index(tgt);
    let mut f = GradedMap::new(shift);
    for (n, e) in entries.iter().enumerate() {
        let at = format!("cardy.{which}[{n}]");
        let Some(&(ks, i)) = si.get(&e.from) else {
            if skip_longer.is_some_and(|len| e.from.split('⊗').count() > len) {
                continue;
            }
            return Err(InputError(format!("{at}.from: unknown basis element `{}`", e.from)));
        };
        let &(kt, j) = ti
            .get(&e.to)
            .ok_or_else(|| InputError(format!("{at}.to: unknown basis element `{}`", e.to)))?;
        if kt != ks + shift {
            return Err(InputError(format!(
                "{at}: `{}` has degree {ks} and `{}` degree {kt}, but the map has degree {shift}",
                e.from, e.to
            )));
        }
        let m = f
            .maps
            .entry(ks)
            .or_insert_with(|| IntMatrix::zeros(tgt.dim(ks + shift), src.dim(ks)));
        m[(j, i)] += BigInt::from(e.coeff);
    }
    Ok(f)
}

fn closed_complex(spec: &ClosedSpec, setup: &CardySetup) -> Result<ChainComplex> {
    match spec {
        ClosedSpec::Named(s) if s == "hom" => Ok(setup.hom.clone()),
        ClosedSpec::Named(s) => Err(InputError(format!("cardy.closed: unknown complex `{s}` (use \"hom\" or a basis)"))),
        ClosedSpec::Complex { basis, differential } => {
            let mut b = BTreeMap::new();
            for (k, labels) in basis {
                let k: i64 = k
                    .parse()
                    .map_err(|_| InputError(format!("cardy.closed.basis.{k}: keys are degrees")))?;
                b.insert(k, labels.clone());
            }
            let bare = ChainComplex::new_unchecked(setup.ring(), b.clone(), BTreeMap::new())?;
            let d = build_map("closed.differential", differential, &bare, &bare, 1, None)?;
            ChainComplex::new(setup.ring(), b, d.maps).map_err(|e| InputError(format!("cardy.closed: {e}")))
        }
    }
}

fn named_map(which: &str, spec: &MapSpec, default: &str, make: impl FnOnce(&str) -> Option<GradedMap>) -> Result<Option<GradedMap>> {
    match spec {
        MapSpec::Named(s) => make(s)
            .map(Some)
            .ok_or_else(|| InputError(format!("cardy.{which}: unknown map `{s}` (use \"{default}\", \"zero\" or entries)"))),
        MapSpec::Entries(_) => Ok(None),
    }
}

fn entries_of(spec: &MapSpec) -> &[MapEntry] {
    match spec {
        MapSpec::Entries(v) => v,
        MapSpec::Named(_) => &[],
    }
}

fn homotopy_entries(setup: &CardySetup, h: &GradedMap) -> Vec<MapEntry> {
    let cc = &setup.cc.complex;
    let mut out = Vec::new();
    for (&k, m) in &h.maps {
        for j in 0..m.cols() {
            for i in 0..m.rows() {
                let v = &m[(i, j)];
                if *v != BigInt::from(0) {
                    out.push(MapEntry {
                        from: cc.basis(k)[j].clone(),
                        to: setup.hom.basis(k + h.shift)[i].clone(),
                        coeff: small(v),
                    });
                }
            }
        }
    }
    out
}

pub fn cardy(
    path: &Path,
    ring: Option<Ring>,
    max_length: usize,
    degrees: Option<(i64, i64)>,
    solve: bool,
) -> Result<Report> {
    let loaded = load(path, ring)?;
    let cp = loaded
        .coproduct
        .as_ref()
        .ok_or_else(|| InputError("the file has no coproduct section".into()))?;
    let table = loaded.file.cardy.clone().unwrap_or(CardyTable {
        closed: ClosedSpec::default(),
        oc: MapSpec::Named("telescoping".into()),
        co: MapSpec::Named("identity".into()),
        homotopy: None,
    });
    if solve && table.homotopy.is_some() {
        return Err(InputError("--solve cannot be combined with a homotopy given in the file".into()));
    }
    let c = &loaded.category;
    let mut rep = Report::new("cardy");
    rep.input_digest = Some(loaded.digest());
    let setup = match CardySetup::new(c, cp.object, &cp.subcategory, &cp.delta, max_length) {
        Ok(s) => s,
        Err(e @ CardyError::NotABimoduleMap(_)) => {
            rep.witness(e.to_string());
            rep.fail();
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };
    let n = setup.degree();
    rep.line(format!(
        "n = {n}; words of length <= {max_length}; CC has rank {}",
        setup.cc.complex.total_dim()
    ));
    let closed = closed_complex(&table.closed, &setup)?;
    let oc = match named_map("oc", &table.oc, "telescoping", |s| match s {
        "telescoping" => Some(setup.composite.clone()),
        "zero" => Some(GradedMap::new(n)),
        _ => None,
    })? {
        Some(f) => f,
        None => build_map("oc", entries_of(&table.oc), &setup.cc.complex, &closed, n, Some(max_length))?,
    };
    let co = match named_map("co", &table.co, "identity", |s| match s {
        "identity" => Some(GradedMap::identity(&closed)),
        "zero" => Some(GradedMap::new(0)),
        _ => None,
    })? {
        Some(f) => f,
        None => build_map("co", entries_of(&table.co), &closed, &setup.hom, 0, None)?,
    };
    let data = match OpenClosedData::new(&setup, closed, oc, co) {
        Ok(d) => d,
        Err(e @ CardyError::NotAChainMap { .. }) => {
            rep.witness(e.to_string());
            rep.fail();
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };

    let witness = if solve {
        match solve_homotopy(&setup, &data)? {
            HomotopySolution::Witness(w) => {
                rep.line("homotopy: solved");
                Some(w)
            }
            HomotopySolution::NoIntegralSolution => {
                rep.line("homotopy: none over the coefficient ring (a rational one exists)");
                rep.fail();
                None
            }
            HomotopySolution::NoSolution => {
                rep.line("homotopy: none exists on this truncation");
                rep.fail();
                None
            }
        }
    } else {
        let h = match &table.homotopy {
            Some(entries) => build_map("homotopy", entries, &setup.cc.complex, &setup.hom, n - 1, Some(max_length))?,
            None => GradedMap::new(n - 1),
        };
        Some(HomotopyWitness { h })
    };
    if let Some(w) = &witness {
        let h = verify_homotopy_equation(&setup, &data, w)?;
        rep.line(format!(
            "homotopy equation: {} words, {} failures",
            h.words_checked,
            h.failures.len()
        ));
        for f in h.failures.iter().take(5) {
            let r: Vec<String> = f.residual.iter().map(|v| v.to_string()).collect();
            rep.witness(format!("homotopy equation on {} (degree {}): residual [{}]", f.word, f.degree, r.join(", ")));
        }
        rep.detail(
            "homotopy",
            json!({
                "words_checked": h.words_checked,
                "failures": h.failures.len(),
                "entries": serde_json::to_value(homotopy_entries(&setup, &w.h))?,
            }),
        );
        if !h.passed() {
            rep.fail();
        }
    }

    let hom = verify_cardy_on_homology(&setup, &data, degrees);
    let yes = |b: bool| if b { "agrees" } else { "differs" };
    let mut per = Vec::new();
    for d in &hom.degrees {
        rep.line(format!(
            "homology degree {}: verbatim {}, with sign {:+} {}",
            d.degree,
            yes(d.verbatim),
            hom.global_sign,
            yes(d.signed)
        ));
        per.push(json!({"degree": d.degree, "verbatim": d.verbatim, "signed": d.signed}));
    }
    rep.line(format!(
        "homology comparison: {}",
        match (hom.verbatim_agrees(), hom.signed_agrees()) {
            (true, true) => "both signs",
            (true, false) => "verbatim",
            (false, true) => "up to the global sign",
            (false, false) => "fails",
        }
    ));
    rep.detail("n", json!(n));
    rep.detail("global_sign", json!(hom.global_sign));
    rep.detail("homology", Value::Array(per));
    if !hom.passed() {
        rep.fail();
    }
    Ok(rep)
}

pub fn strata(space: &str, equation: Option<&str>) -> Result<Report> {
    let space = SpaceId::parse(space)?;
    let dim = dimension(space)?;
    let strata = enumerate_codim1(space)?;
    let mut rep = Report::new("strata");
    rep.line(format!("space: {space}; dimension {dim}; {} codimension-one strata", strata.len()));
    for (i, s) in strata.iter().enumerate() {
        rep.line(format!("{:>3}  {s}", i + 1));
    }
    rep.detail("space", json!(space.to_string()));
    rep.detail("dimension", json!(dim));
    rep.detail("strata", json!(strata.iter().map(|s| s.to_string()).collect::<Vec<_>>()));
    if let Some(eq) = equation {
        let eq = Equation::parse(eq)
            .ok_or_else(|| InputError(format!("unknown equation `{eq}` (ainf, bimodule-map, hochschild, homotopy)")))?;
        let b = match strata_term_bijection(space, eq) {
            Ok(b) => b,
            Err(e @ StrataError::Unsupported { .. }) => return Err(e.into()),
            Err(e) => return Err(e.into()),
        };
        rep.line(format!(
            "{eq}: {} matched, {} excluded, {} unmatched strata, {} unmatched terms, {} collisions",
            b.pairs.len(),
            b.excluded.len(),
            b.unmatched_strata.len(),
            b.unmatched_terms.len(),
            b.collisions.len()
        ));
        for (s, t) in &b.pairs {
            rep.line(format!("  {s} <-> {t:?}"));
        }
        for (t, why) in &b.excluded {
            rep.line(format!("  excluded {t:?}: {why:?}"));
        }
        for s in &b.unmatched_strata {
            rep.witness(format!("no term for stratum {s}"));
        }
        for (t, s) in &b.unmatched_terms {
            rep.witness(format!("term {t:?} maps to {s}, which is not enumerated"));
        }
        for (s, ts) in &b.collisions {
            rep.witness(format!("stratum {s} is hit by {ts:?}"));
        }
        rep.detail(
            "bijection",
            json!({
                "equation": eq.to_string(),
                "pairs": b.pairs.len(),
                "excluded": b.excluded.len(),
                "passed": b.passed(),
            }),
        );
        if !b.passed() {
            rep.fail();
        }
    }
    Ok(rep)
}

pub fn sign(tag: &str, args: &[i64]) -> Result<Report> {
    let v = match sign_formula(tag, args) {
        Ok(v) => v,
        Err(StrataError::UnknownTag(t)) => {
            return Err(InputError(format!("unknown sign tag `{t}` (known: {})", SIGN_TAGS.join(", "))))
        }
        Err(e) => return Err(e.into()),
    };
    let mut rep = Report::new("sign");
    rep.line(format!("{tag}{args:?} = {v:+}"));
    rep.detail("tag", json!(tag));
    rep.detail("args", json!(args));
    rep.detail("sign", json!(v));
    Ok(rep)
}

/// JSON text of a shipped fixture, with its coproduct when one is shipped.
pub fn fixture_text(name: &str, degree: i64) -> Result<String> {
    let cp = match name {
        "ground-ring" => Some(fixtures::ground_ring_coproduct()),
        "dual-numbers" => Some(fixtures::dual_numbers_coproduct(degree)),
        "shifted-summand" => Some(fixtures::shifted_summand_coproduct(degree)),
        _ => None,
    };
    let c = match &cp {
        Some(cp) => cp.category.clone(),
        None => fixtures::by_name(name, degree).ok_or_else(|| {
            InputError(format!(
                "unknown fixture `{name}` (known: {}, shifted-summand)",
                fixtures::NAMES.join(", ")
            ))
        })?,
    };
    let mut f = export_category(&c);
    if let Some(cp) = &cp {
        f.n = Some(cp.degree());
        f.coproduct = Some(export_coproduct(cp));
    }
    Ok(serde_json::to_string_pretty(&f)? + "\n")
}
