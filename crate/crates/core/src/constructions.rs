//! New ι-complexes from old: the unit, duals, direct sums and tensor products.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{
    homology_type, iota_map, phi, psi, Character, Generator, GradedMap, IotaComplex, MapError,
    ValidationErrors,
};
use crate::gf2::BitMatrix;

/// Which correction term the product involution carries:
/// `One` uses `Φ ⊗ Ψ`, `Two` uses `Ψ ⊗ Φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    One,
    Two,
}

impl Variant {
    pub fn from_number(n: u8) -> Option<Variant> {
        match n {
            1 => Some(Variant::One),
            2 => Some(Variant::Two),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Variant::One => 1,
            Variant::Two => 2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

pub const TENSOR_SEPARATOR: char = '⊗';

fn wrap(name: &str) -> String {
    if name.contains(TENSOR_SEPARATOR) {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// Name of the pair generator `x ⊗ y`.
pub fn pair_name(x: &str, y: &str) -> String {
    format!("{}{}{}", wrap(x), TENSOR_SEPARATOR, wrap(y))
}

/// Name of the dual generator `x*`.
pub fn dual_name(x: &str) -> String {
    format!("{}*", wrap(x))
}

/// `(F2[U, U^-1], id)`: one generator in gradings `(0, 0)`.
pub fn identity_complex() -> Arc<IotaComplex> {
    IotaComplex::new(
        "unknot",
        vec![Generator::new("e", 0, 0)],
        BitMatrix::zeros(1, 1),
        BitMatrix::identity(1),
        false,
    )
    .expect("unit complex is valid")
}

/// The empty complex (unit for direct sums).
pub fn empty_complex() -> Arc<IotaComplex> {
    IotaComplex::new("empty", Vec::new(), BitMatrix::zeros(0, 0), BitMatrix::zeros(0, 0), true)
        .expect("empty complex is valid")
}

/// `Hom(C, F2[U, U^-1])` with the dual basis: gradings negate, the
/// differential and the involution transpose.
pub fn dual(c: &Arc<IotaComplex>) -> Result<Arc<IotaComplex>, ValidationErrors> {
    let gens = c
        .generators()
        .iter()
        .map(|g| Generator::new(dual_name(&g.name), -g.maslov, -g.alexander))
        .collect();
    IotaComplex::new(
        format!("dual({})", c.name()),
        gens,
        c.diff_matrix().transpose(),
        c.iota_matrix().transpose(),
        c.auxiliary(),
    )
}

fn classify_auxiliary(c: Arc<IotaComplex>) -> Arc<IotaComplex> {
    let aux = !homology_type(&c).is_unit();
    if aux == c.auxiliary() {
        c
    } else {
        c.with_auxiliary(aux)
    }
}

/// Block sum. Generator names clashing between the summands are prefixed
/// with `l.` and `r.` respectively.
pub fn direct_sum(c1: &Arc<IotaComplex>, c2: &Arc<IotaComplex>) -> Result<Arc<IotaComplex>, ValidationErrors> {
    let left: HashSet<&str> = c1.generators().iter().map(|g| g.name.as_str()).collect();
    let clash = c2.generators().iter().any(|g| left.contains(g.name.as_str()));
    let rename = |prefix: &str, g: &Generator| {
        if clash {
            Generator::new(format!("{prefix}.{}", g.name), g.maslov, g.alexander)
        } else {
            g.clone()
        }
    };
    let gens = c1
        .generators()
        .iter()
        .map(|g| rename("l", g))
        .chain(c2.generators().iter().map(|g| rename("r", g)))
        .collect();
    let c = IotaComplex::new(
        format!("sum({},{})", c1.name(), c2.name()),
        gens,
        c1.diff_matrix().block_diag(c2.diff_matrix()),
        c1.iota_matrix().block_diag(c2.iota_matrix()),
        false,
    )?;
    Ok(classify_auxiliary(c))
}

/// `f1 ⊗ f2` between tensor complexes; no Koszul signs in characteristic two.
pub fn tensor_maps(
    f1: &GradedMap,
    f2: &GradedMap,
    source: &Arc<IotaComplex>,
    target: &Arc<IotaComplex>,
) -> Result<GradedMap, MapError> {
    GradedMap::new(
        source.clone(),
        target.clone(),
        f1.degree() + f2.degree(),
        Character::tensor(f1.character(), f2.character()),
        f1.matrix().kron(f2.matrix()),
    )
}

/// The product complex: pair generators `x ⊗ y` in lexicographic order,
/// the Leibniz differential, and the involution
/// `ι1 ⊗ ι2 + (Φ1 ⊗ Ψ2)(ι1 ⊗ ι2)` (variant one) or with `Ψ1 ⊗ Φ2` (variant two).
pub fn tensor(c1: &Arc<IotaComplex>, c2: &Arc<IotaComplex>, variant: Variant) -> Result<Arc<IotaComplex>, ValidationErrors> {
    let mut gens = Vec::with_capacity(c1.len() * c2.len());
    for x in c1.generators() {
        for y in c2.generators() {
            gens.push(Generator::new(pair_name(&x.name, &y.name), x.maslov + y.maslov, x.alexander + y.alexander));
        }
    }
    let (i1, i2) = (BitMatrix::identity(c1.len()), BitMatrix::identity(c2.len()));
    let diff = c1.diff_matrix().kron(&i2).try_add(&i1.kron(c2.diff_matrix())).unwrap();
    let name = format!("tensor{}({},{})", variant.number(), c1.name(), c2.name());
    let plain = c1.iota_matrix().kron(c2.iota_matrix());
    // The uncorrected product is already a valid complex; the correction is
    // computed with maps on it.
    let base = IotaComplex::new(name.clone(), gens.clone(), diff.clone(), plain, false)?;
    let iota_product = tensor_maps(&iota_map(c1), &iota_map(c2), &base, &base).expect("iota product is skew");
    let derivative_product = match variant {
        Variant::One => tensor_maps(&phi(c1), &psi(c2), &base, &base),
        Variant::Two => tensor_maps(&psi(c1), &phi(c2), &base, &base),
    }
    .expect("derivative product is homogeneous");
    let correction = derivative_product.compose(&iota_product).unwrap();
    let iota = iota_product
        .add(&correction)
        .unwrap()
        .retype(Character::Skew)
        .expect("product involution is skew-filtered");
    let c = IotaComplex::new(name, gens, diff, iota.into_matrix(), false)?;
    Ok(classify_auxiliary(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate, HomologyTag, Parity, RawComplex, ValidationLevel};

    fn trefoil() -> Arc<IotaComplex> {
        validate(
            &RawComplex {
                name: "T".into(),
                auxiliary: false,
                generators: vec![Generator::new("a", 0, 1), Generator::new("b", -1, 0), Generator::new("c", -2, -1)],
                diff: vec![("b".into(), "a".into()), ("b".into(), "c".into())],
                iota: vec![("a".into(), "c".into()), ("c".into(), "a".into()), ("b".into(), "b".into())],
            },
            ValidationLevel::Deep,
        )
        .unwrap()
    }

    fn boxx() -> Arc<IotaComplex> {
        validate(
            &RawComplex {
                name: "X".into(),
                auxiliary: true,
                generators: vec![Generator::new("p", 0, 0), Generator::new("q", -1, 0)],
                diff: vec![("p".into(), "q".into())],
                iota: vec![("p".into(), "p".into()), ("q".into(), "q".into())],
            },
            ValidationLevel::Deep,
        )
        .unwrap()
    }

    #[test]
    fn identity_element() {
        let e = identity_complex();
        assert_eq!(homology_type(&e).tag, HomologyTag::Unit(Parity::Even));
        assert!(phi(&e).is_zero() && psi(&e).is_zero());
        assert!(crate::complex::deep_errors(&e).is_empty());
    }

    #[test]
    fn dual_of_trefoil_is_left_staircase() {
        let d = dual(&trefoil()).unwrap();
        let gens: Vec<_> = d.generators().iter().map(|g| (g.name.as_str(), g.maslov, g.alexander)).collect();
        assert_eq!(gens, vec![("a*", 0, -1), ("b*", 1, 0), ("c*", 2, 1)]);
        let diff: Vec<_> = d.to_raw().diff;
        assert_eq!(diff, vec![("a*".to_string(), "b*".to_string()), ("c*".to_string(), "b*".to_string())]);
        assert!(trefoil().isomorphic_by_position(&dual(&d).unwrap()));
        let e = identity_complex();
        assert!(e.isomorphic_by_position(&dual(&e).unwrap()));
    }

    #[test]
    fn direct_sums() {
        let e = identity_complex();
        let s = direct_sum(&e, &boxx()).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(homology_type(&s).tag, HomologyTag::Unit(Parity::Even));
        let ee = direct_sum(&e, &e).unwrap();
        assert_eq!(homology_type(&ee), crate::complex::HomologyType::from_dims(2, 0));
        assert_eq!(ee.generators()[0].name, "l.e");
        let t = trefoil();
        assert!(t.isomorphic_by_position(&direct_sum(&t, &empty_complex()).unwrap()));
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let t = trefoil();
        for v in [Variant::One, Variant::Two] {
            let p = tensor(&t, &identity_complex(), v).unwrap();
            assert!(p.isomorphic_by_position(&t));
            let q = tensor(&identity_complex(), &t, v).unwrap();
            assert!(q.isomorphic_by_position(&t));
        }
    }

    #[test]
    fn trefoil_times_dual_has_unit_homology() {
        let t = trefoil();
        let p = tensor(&t, &dual(&t).unwrap(), Variant::One).unwrap();
        assert_eq!(p.len(), 9);
        assert!(homology_type(&p).is_unit());
        assert_eq!(p.generators()[1].name, "a⊗b*");
    }

    #[test]
    fn leibniz_for_derivatives() {
        let t = trefoil();
        let d = dual(&t).unwrap();
        let p = tensor(&t, &d, Variant::One).unwrap();
        let (i1, i2) = (BitMatrix::identity(t.len()), BitMatrix::identity(d.len()));
        let phi_expected = phi(&t).matrix().kron(&i2).try_add(&i1.kron(phi(&d).matrix())).unwrap();
        assert_eq!(phi(&p).matrix(), &phi_expected);
        let psi_expected = psi(&t).matrix().kron(&i2).try_add(&i1.kron(psi(&d).matrix())).unwrap();
        assert_eq!(psi(&p).matrix(), &psi_expected);
    }

    #[test]
    fn tensor_with_acyclic_is_acyclic() {
        let t = trefoil();
        assert!(homology_type(&tensor(&t, &boxx(), Variant::One).unwrap()).is_acyclic());
    }
}
