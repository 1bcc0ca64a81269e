//! Small categories used in tests, benchmarks and the CLI `fixture` command.
//!
//! Sign convention shared by every strictly associative fixture: for an
//! associative graded product `a2 * a1`, `mu^2(a2, a1) = (-1)^{deg a1} a2 * a1`
//! and `mu^1(a) = (-1)^{deg a} da`. With that rule a strict unit satisfies
//! `mu^2(e, x) = (-1)^{deg x} x` and `mu^2(x, e) = x`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::ainf::{AinfCategory, Chain, ObjId};
use crate::linalg::Ring;
use crate::modules::{
    all_objects, diagonal_bimodule, tensor_bimodule, yoneda_module, BimodKey, Bimodule,
    BimoduleHom, Side, SideModule,
};

fn parity_sign(deg: i64) -> i64 {
    if deg.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// One object `K`, `hom(K,K) = Z e` in degree 0, `mu^2(e,e) = e`.
pub fn ground_ring() -> AinfCategory {
    AinfCategory::builder(Ring::Integers)
        .object("K")
        .generator("K", "K", "e", 0)
        .term(&["e", "e"], "e", 1)
        .unit("K", &[(1, "e")])
        .build()
        .expect("ground ring fixture")
}

/// `Z[eps]/(eps^2)` with `deg eps` configurable.
pub fn dual_numbers(eps_degree: i64) -> AinfCategory {
    let s = parity_sign(eps_degree);
    AinfCategory::builder(Ring::Integers)
        .object("K")
        .generator("K", "K", "e", 0)
        .generator("K", "K", "eps", eps_degree)
        .term(&["e", "e"], "e", 1)
        // mu^2(e, eps), eps applied first
        .term(&["eps", "e"], "eps", s)
        // mu^2(eps, e)
        .term(&["e", "eps"], "eps", 1)
        .unit("K", &[(1, "e")])
        .build()
        .expect("dual numbers fixture")
}

/// Path category of the linearly oriented `A_n` quiver: objects `X1..Xn`,
/// `hom(Xi, Xj) = Z p_i_j` for `i <= j`, all in degree 0, composition of paths.
pub fn a_n_path(n: usize) -> AinfCategory {
    let mut b = AinfCategory::builder(Ring::Integers);
    for i in 1..=n {
        b.object(&format!("X{i}"));
    }
    for i in 1..=n {
        for j in i..=n {
            b.generator(&format!("X{i}"), &format!("X{j}"), &format!("p{i}_{j}"), 0);
        }
    }
    for i in 1..=n {
        for j in i..=n {
            for k in j..=n {
                b.term(
                    &[&format!("p{i}_{j}"), &format!("p{j}_{k}")],
                    &format!("p{i}_{k}"),
                    1,
                );
            }
        }
    }
    for i in 1..=n {
        b.unit(&format!("X{i}"), &[(1, &format!("p{i}_{i}"))]);
    }
    b.build().expect("A_n fixture")
}

/// One-object algebra with nonzero `mu^3`, a strictly unital deformation of
/// a non-associative product whose associator is a `mu^1`-boundary.
///
/// Generators `e, a, b, c, u, p` of degree 0 and `q` of degree -1 with
/// `mu^2(b,a) = u`, `mu^2(c,u) = p`, `mu^1(q) = -p`, `mu^3(c,b,a) = q`, and
/// `e` a strict unit.
pub fn mu3_algebra() -> AinfCategory {
    let gens: [(&str, i64); 7] = [
        ("e", 0),
        ("a", 0),
        ("b", 0),
        ("c", 0),
        ("u", 0),
        ("p", 0),
        ("q", -1),
    ];
    let mut bld = AinfCategory::builder(Ring::Integers);
    bld.object("K");
    for (g, d) in gens {
        bld.generator("K", "K", g, d);
    }
    for (g, d) in gens {
        if g == "e" {
            bld.term(&["e", "e"], "e", 1);
            continue;
        }
        bld.term(&[g, "e"], g, parity_sign(d));
        bld.term(&["e", g], g, 1);
    }
    bld.term(&["a", "b"], "u", 1)
        .term(&["u", "c"], "p", 1)
        .term(&["q"], "p", -1)
        .term(&["a", "b", "c"], "q", 1)
        .unit("K", &[(1, "e")])
        .build()
        .expect("mu3 fixture")
}

/// Ground ring plus an object `Z` with no morphisms at all.
pub fn ground_ring_with_zero_object() -> AinfCategory {
    AinfCategory::builder(Ring::Integers)
        .object("K")
        .object("Z")
        .generator("K", "K", "e", 0)
        .term(&["e", "e"], "e", 1)
        .unit("K", &[(1, "e")])
        .build()
        .expect("zero object fixture")
}

/// Additive category of shifted copies of one object: each object is a list of
/// slot shifts, `hom(X, Y)` has a generator `E_t_s` for each slot `s` of `X`
/// and `t` of `Y` in degree `shift(s) - shift(t)`, composed as matrix units.
pub fn slot_category(objects: &[(&str, &[i64])]) -> AinfCategory {
    let mut b = AinfCategory::builder(Ring::Integers);
    for (name, _) in objects {
        b.object(name);
    }
    let gname = |x: &str, s: usize, y: &str, t: usize| format!("E[{y}{t},{x}{s}]");
    for (x, xs) in objects {
        for (y, ys) in objects {
            for (s, sh_s) in xs.iter().enumerate() {
                for (t, sh_t) in ys.iter().enumerate() {
                    b.generator(x, y, &gname(x, s, y, t), sh_s - sh_t);
                }
            }
        }
    }
    for (x, xs) in objects {
        for (y, ys) in objects {
            for (z, zs) in objects {
                for (s, sh_s) in xs.iter().enumerate() {
                    for (t, sh_t) in ys.iter().enumerate() {
                        for u in 0..zs.len() {
                            let first = format!("{x}->{y}:{}", gname(x, s, y, t));
                            let second = format!("{y}->{z}:{}", gname(y, t, z, u));
                            let out = format!("{x}->{z}:{}", gname(x, s, z, u));
                            b.term(&[&first, &second], &out, parity_sign(sh_s - sh_t));
                        }
                    }
                }
            }
        }
    }
    for (x, xs) in objects {
        let names: Vec<String> = (0..xs.len())
            .map(|s| format!("{x}->{x}:{}", gname(x, s, x, s)))
            .collect();
        let unit: Vec<(i64, &str)> = names.iter().map(|n| (1, n.as_str())).collect();
        b.unit(x, &unit);
    }
    b.build().expect("slot category")
}

/// `K = L + L[1]` inside the slot category.
pub fn split_summand() -> AinfCategory {
    slot_category(&[("K", &[0, 1]), ("L", &[0])])
}

/// Exterior algebra on `z` of degree -1 with `dz = 2`, so the unit class is
/// 2-torsion.
pub fn torsion_unit_algebra() -> AinfCategory {
    AinfCategory::builder(Ring::Integers)
        .object("K")
        .generator("K", "K", "e", 0)
        .generator("K", "K", "z", -1)
        .term(&["e", "e"], "e", 1)
        .term(&["z", "e"], "z", -1)
        .term(&["e", "z"], "z", 1)
        .term(&["z"], "e", -2)
        .unit("K", &[(1, "e")])
        .build()
        .expect("torsion fixture")
}

/// Names of the shipped categories accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "ground-ring",
    "dual-numbers",
    "a2",
    "a3",
    "mu3",
    "zero-object",
    "split-summand",
    "torsion-unit",
];

pub fn by_name(name: &str, eps_degree: i64) -> Option<AinfCategory> {
    Some(match name {
        "ground-ring" => ground_ring(),
        "dual-numbers" => dual_numbers(eps_degree),
        "a2" => a_n_path(2),
        "a3" => a_n_path(3),
        "mu3" => mu3_algebra(),
        "zero-object" => ground_ring_with_zero_object(),
        "split-summand" => split_summand(),
        "torsion-unit" => torsion_unit_algebra(),
        _ => return None,
    })
}

/// Every shipped category, with the dual numbers in degrees 0, 1 and 2.
pub fn all() -> Vec<(String, AinfCategory)> {
    let mut v = vec![
        ("ground-ring".to_string(), ground_ring()),
        ("dual-numbers(0)".to_string(), dual_numbers(0)),
        ("dual-numbers(1)".to_string(), dual_numbers(1)),
        ("dual-numbers(2)".to_string(), dual_numbers(2)),
        ("a2".to_string(), a_n_path(2)),
        ("a3".to_string(), a_n_path(3)),
        ("mu3".to_string(), mu3_algebra()),
        ("zero-object".to_string(), ground_ring_with_zero_object()),
        ("split-summand".to_string(), split_summand()),
        ("torsion-unit".to_string(), torsion_unit_algebra()),
    ];
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// Unit of `o` as recorded in the fixture.
pub fn unit_of(c: &AinfCategory, object: &str) -> Chain {
    let o = c.object_id(object).expect("object");
    c.unit(o).cloned().unwrap_or_default()
}

/// Units keyed by object name, convenience for tests.
pub fn unit_table(c: &AinfCategory) -> BTreeMap<String, Chain> {
    c.units()
        .iter()
        .map(|(&o, ch)| (c.object_name(o).to_string(), ch.clone()))
        .collect()
}

/// A category with an object `K`, a subcategory `B` and a bimodule map
/// `Δ` of degree `n` from the diagonal of `B` to `Y^l_K ⊗ Y^r_K`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub name: String,
    pub category: AinfCategory,
    pub object: ObjId,
    pub subcategory: BTreeSet<ObjId>,
    pub delta: BimoduleHom,
}

impl Coproduct {
    pub fn degree(&self) -> i64 {
        self.delta.shift
    }

    pub fn diagonal(&self) -> Bimodule {
        diagonal_bimodule(&self.category, &self.subcategory).expect("diagonal")
    }

    pub fn left(&self) -> SideModule {
        yoneda_module(&self.category, self.object, Side::Left, &self.subcategory).expect("left")
    }

    pub fn right(&self) -> SideModule {
        yoneda_module(&self.category, self.object, Side::Right, &self.subcategory).expect("right")
    }

    pub fn target(&self) -> Bimodule {
        tensor_bimodule(&self.left(), &self.right()).expect("tensor")
    }
}

fn coproduct_from(
    name: String,
    category: AinfCategory,
    object: &str,
    subcategory: BTreeSet<ObjId>,
    n: i64,
    terms: &[(&str, &str, i64)],
) -> Coproduct {
    let object = category.object_id(object).expect("object");
    let mut cp = Coproduct {
        name,
        category,
        object,
        subcategory,
        delta: BimoduleHom::new(n),
    };
    let diag = cp.diagonal();
    let tgt = cp.target();
    for (p, out, v) in terms {
        let p = diag.find(p).expect("diagonal generator");
        let out = tgt.find(out).expect("tensor generator");
        cp.delta.add(BimodKey::new(vec![], p, vec![]), out, coeff(*v));
    }
    cp
}

/// `Δ(e) = e⊗e` of degree 0 on the ground ring.
pub fn ground_ring_coproduct() -> Coproduct {
    let c = ground_ring();
    let b = all_objects(&c);
    coproduct_from("ground-ring".into(), c, "K", b, 0, &[("e", "e⊗e", 1)])
}

/// Dual numbers with `deg eps = n`: `Δ(e) = e⊗eps + (-1)^n eps⊗e`,
/// `Δ(eps) = eps⊗eps`, no higher components.
pub fn dual_numbers_coproduct(n: i64) -> Coproduct {
    let c = dual_numbers(n);
    let b = all_objects(&c);
    coproduct_from(
        format!("dual-numbers({n})"),
        c,
        "K",
        b,
        n,
        &[("e", "e⊗eps", 1), ("e", "eps⊗e", parity_sign(n)), ("eps", "eps⊗eps", 1)],
    )
}

/// `K = L + L[n]`, `B = {L}` and `Δ(1_L) = E[L0,K1] ⊗ E[K0,L0]`. Composing
/// the two factors gives the off-diagonal `E[K0,K1]` of degree `n`.
pub fn shifted_summand_coproduct(n: i64) -> Coproduct {
    let c = slot_category(&[("K", &[0, n]), ("L", &[0])]);
    let b: BTreeSet<ObjId> = [c.object_id("L").unwrap()].into();
    coproduct_from(
        format!("shifted-summand({n})"),
        c,
        "K",
        b,
        n,
        &[("E[L0,L0]", "E[L0,K1]⊗E[K0,L0]", 1)],
    )
}

/// The shipped coproducts.
pub fn coproducts() -> Vec<Coproduct> {
    let mut v = vec![ground_ring_coproduct()];
    for n in 0..3 {
        v.push(dual_numbers_coproduct(n));
    }
    for n in 0..3 {
        v.push(shifted_summand_coproduct(n));
    }
    v
}

pub fn coeff(v: i64) -> BigInt {
    BigInt::from(v)
}
