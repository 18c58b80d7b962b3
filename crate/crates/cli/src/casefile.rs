//! The JSON case format.
//!
//! Integers may be JSON numbers or decimal strings, `Q/Z` values are reduced
//! `"p/q"` strings. Matrices are lists of rows.

use std::fmt;

use exact_lattice::{BigInt, IntMatrix, QZ};
use finite_group::{FiniteGroup, GroupAction};
use kottwitz_sign::{BasedRootDatum, CartanType, CenterClass, TwistData};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use tori_llc::{build_case, ToriCase, ToriError, TorusModel};
use unramified_weil::LocalModel;

pub const SCHEMA_VERSION: u32 = 1;

/// A parse or validation failure, located by field path or by line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl InputError {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for InputError {}

/// An arbitrary precision integer. Serialized as a number when it is safe in a
/// double, as a string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

const SAFE: i64 = 1 << 53;

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() <= SAFE => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim().parse().map(Int).map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn int_vec(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

/// `"p/q"` with `0 <= p < q` coprime, or `"0"`.
pub fn qz_string(q: &QZ) -> String {
    if q.is_zero() {
        "0".into()
    } else {
        q.to_string()
    }
}

pub fn parse_reduced_qz(s: &str, field: &str) -> Result<QZ, InputError> {
    let q: QZ = s.parse().map_err(|e| InputError::new(field, format!("{e}")))?;
    let (n, d): (BigInt, BigInt) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse().unwrap(), d.trim().parse().unwrap()),
        None => (s.trim().parse().unwrap(), BigInt::from(1)),
    };
    let reduced = if n.is_zero() {
        d == BigInt::from(1)
    } else {
        !n.is_negative() && n < d && n.gcd(&d) == BigInt::from(1)
    };
    if !reduced {
        return Err(InputError::new(field, format!("{s:?} is not reduced, expected {:?}", qz_string(&q))));
    }
    Ok(q)
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<Galois>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<Component>,
    /// `z(sigma^i)` for `i = 0 .. n-1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<Vec<Int>>>,
    /// `phi_0(sigma)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<SignSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteSection>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Galois {
    pub order: usize,
    pub sigma: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Vec<usize>),
    Symmetric(usize),
    Dihedral(usize),
    /// Multiplication table, `table[a][b] = ab`.
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    /// Element index in the group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    /// Index into the standard generators of a named group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<usize>,
    pub matrix: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub group: GroupSpec,
    pub generators: Vec<Generator>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Label(String),
    Cartan { cartan: Vec<Vec<i64>> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum XiSpec {
    /// Values on the fundamental weights.
    Values(Vec<String>),
    /// `"all"`: every class.
    Keyword(String),
}

/// A diagram automorphism: explicit images of the simple roots, `"identity"`
/// or `"flip"` for the standard involution of a labelled type.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PermSpec {
    Images(Vec<usize>),
    Keyword(String),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SignSection {
    pub datum: DatumSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<PermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<PermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub xi: XiSpec,
    /// The sign every listed class should give.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<i8>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSection {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub size: Option<usize>,
}

pub fn parse(text: &str) -> Result<CaseFile, InputError> {
    let file: CaseFile = serde_json::from_str(text)
        .map_err(|e| InputError::new(format!("line {} column {}", e.line(), e.column()), strip_position(&e.to_string())))?;
    if file.schema != SCHEMA_VERSION {
        return Err(InputError::new("schema", format!("unsupported schema version {}, expected {SCHEMA_VERSION}", file.schema)));
    }
    Ok(file)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn matrix(rows: &[Vec<Int>], n: usize, field: &str) -> Result<IntMatrix, InputError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(InputError::new(field, format!("expected a {n} x {n} matrix")));
    }
    let mut m = IntMatrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            m[(i, j)] = v.0.clone();
        }
    }
    Ok(m)
}

fn group(spec: &GroupSpec) -> Result<FiniteGroup, InputError> {
    let bad = |m: String| InputError::new("component.group", m);
    Ok(match spec {
        GroupSpec::Cyclic(n) if *n >= 1 => FiniteGroup::cyclic(*n),
        GroupSpec::Product(ns) if !ns.is_empty() && ns.iter().all(|&n| n >= 1) => {
            ns[1..].iter().fold(FiniteGroup::cyclic(ns[0]), |g, &n| FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(n)))
        }
        GroupSpec::Symmetric(n) if *n >= 1 => FiniteGroup::symmetric(*n),
        GroupSpec::Dihedral(n) if *n >= 1 => FiniteGroup::dihedral(*n),
        GroupSpec::Table(rows) => FiniteGroup::from_table(rows).map_err(|e| bad(format!("{e}")))?,
        _ => return Err(bad("group orders must be positive".into())),
    })
}

/// The validated torus part of a case file.
#[derive(Clone, Debug)]
pub struct TorusInput {
    pub model: TorusModel,
    /// The `z` table as given.
    pub z: Vec<Vec<BigInt>>,
    pub zeta: Vec<BigInt>,
    pub p: Vec<QZ>,
}

impl TorusInput {
    pub fn case(&self) -> Result<ToriCase, InputError> {
        build_case(&self.model, self.zeta.clone(), self.p.clone()).map_err(|e| match e {
            ToriError::Weil(_) => InputError::new("phi", format!("not an unramified parameter: {e}")),
            _ => InputError::new("z", format!("{e}")),
        })
    }
}

impl CaseFile {
    pub fn torus(&self) -> Result<TorusInput, InputError> {
        let missing = |f: &str| InputError::new(f, "missing field");
        let rank = self.rank.ok_or_else(|| missing("rank"))?;
        let gal = self.galois.as_ref().ok_or_else(|| missing("galois"))?;
        let comp = self.component.as_ref().ok_or_else(|| missing("component"))?;
        let z = self.z.as_ref().ok_or_else(|| missing("z"))?;
        let phi = self.phi.as_ref().ok_or_else(|| missing("phi"))?;
        let n = gal.order;
        if n == 0 {
            return Err(InputError::new("galois.order", "must be positive"));
        }
        let sigma = matrix(&gal.sigma, rank, "galois.sigma")?;

        let g = group(&comp.group)?;
        let std_gens = g.generators();
        let mut gens = Vec::with_capacity(comp.generators.len());
        for (i, gen) in comp.generators.iter().enumerate() {
            let field = format!("component.generators[{i}]");
            let el = match (gen.element, gen.generator) {
                (Some(e), None) if e < g.order() => e,
                (None, Some(k)) if k < std_gens.len() => std_gens[k],
                (Some(_), Some(_)) => return Err(InputError::new(field, "give either element or generator, not both")),
                (None, None) => return Err(InputError::new(field, "missing element or generator")),
                _ => return Err(InputError::new(field, "index out of range")),
            };
            gens.push((el, matrix(&gen.matrix, rank, &format!("{field}.matrix"))?));
        }
        let action = GroupAction::from_generators(g, rank, &gens)
            .map_err(|e| InputError::new("component.generators", format!("does not define an action: {e}")))?;
        let model = TorusModel::new(LocalModel::new(n), sigma.clone(), action).map_err(|e| match e {
            ToriError::NotCommuting(a) => InputError::new("component.generators", format!("element {a} does not commute with sigma")),
            ToriError::Weil(w) => InputError::new("galois.sigma", format!("{w}")),
            other => InputError::new("component", format!("{other}")),
        })?;

        if z.len() != n {
            return Err(InputError::new("z", format!("expected {n} values z(sigma^i)")));
        }
        for (i, v) in z.iter().enumerate() {
            if v.len() != rank {
                return Err(InputError::new(format!("z[{i}]"), format!("expected a vector of length {rank}")));
            }
        }
        let zt: Vec<Vec<BigInt>> = z.iter().map(|v| v.iter().map(|x| x.0.clone()).collect()).collect();
        let mut powers = vec![IntMatrix::identity(rank)];
        for i in 1..n {
            powers.push(&powers[i - 1] * &sigma);
        }
        for i in 0..n {
            for j in 0..n {
                let rhs: Vec<BigInt> = zt[i].iter().zip(powers[i].mul_vec(&zt[j])).map(|(a, b)| a + b).collect();
                if zt[(i + j) % n] != rhs {
                    return Err(InputError::new(
                        "z",
                        format!("cocycle identity z(gh) = z(g) + g z(h) fails at g = sigma^{i}, h = sigma^{j}"),
                    ));
                }
            }
        }

        if phi.len() != rank {
            return Err(InputError::new("phi", format!("expected a vector of length {rank}")));
        }
        let p = phi
            .iter()
            .enumerate()
            .map(|(i, s)| parse_reduced_qz(s, &format!("phi[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TorusInput {
            model,
            zeta: zt[1 % n].clone(),
            z: zt,
            p,
        })
    }

    pub fn sign(&self) -> Result<SignInput, InputError> {
        let s = self.sign.as_ref().ok_or_else(|| InputError::new("sign", "missing field"))?;
        let (datum, label) = match &s.datum {
            DatumSpec::Label(l) => {
                let t = CartanType::parse(l).map_err(|e| InputError::new("sign.datum", format!("{e}")))?;
                (BasedRootDatum::of_type(t), Some(t))
            }
            DatumSpec::Cartan { cartan } => (
                BasedRootDatum::from_cartan(cartan.clone()).map_err(|e| InputError::new("sign.datum", format!("{e}")))?,
                None,
            ),
        };
        let r = datum.rank();
        let perm = |spec: &Option<PermSpec>, field: &str| -> Result<Vec<usize>, InputError> {
            match spec {
                None => Ok((0..r).collect()),
                Some(PermSpec::Images(v)) => Ok(v.clone()),
                Some(PermSpec::Keyword(k)) if k == "identity" => Ok((0..r).collect()),
                Some(PermSpec::Keyword(k)) if k == "flip" => label
                    .and_then(|t| t.diagram_flip())
                    .ok_or_else(|| InputError::new(field, "\"flip\" needs a labelled type with a diagram involution")),
                Some(PermSpec::Keyword(k)) => Err(InputError::new(field, format!("unknown permutation {k:?}"))),
            }
        };
        let gamma = perm(&s.gamma, "sign.gamma")?;
        let a = perm(&s.a, "sign.a")?;
        let degree = s.degree.unwrap_or(2);
        if degree == 0 {
            return Err(InputError::new("sign.degree", "must be positive"));
        }
        let data = TwistData::new(datum, gamma, a, LocalModel::new(degree))
        .map_err(|e| InputError::new("sign", format!("{e}")))?;
        let classes = match &s.xi {
            XiSpec::Keyword(k) if k == "all" => CenterClass::all(&data).map_err(|e| InputError::new("sign.xi", format!("{e}")))?,
            XiSpec::Keyword(k) => return Err(InputError::new("sign.xi", format!("expected a list of values or \"all\", got {k:?}"))),
            XiSpec::Values(v) => {
                let vals = v
                    .iter()
                    .enumerate()
                    .map(|(i, x)| parse_reduced_qz(x, &format!("sign.xi[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                vec![CenterClass::new(&data, vals).map_err(|e| InputError::new("sign.xi", format!("{e}")))?]
            }
        };
        if let Some(e) = s.expected {
            if e != 1 && e != -1 {
                return Err(InputError::new("sign.expected", "must be 1 or -1"));
            }
        }
        Ok(SignInput {
            data,
            classes,
            expected: s.expected,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SignInput {
    pub data: TwistData,
    pub classes: Vec<CenterClass>,
    pub expected: Option<i8>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ints_round_trip_through_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&vec![Int(big.clone()), Int(BigInt::from(-3))]).unwrap();
        assert_eq!(s, "[\"123456789012345678901234567890\",-3]");
        let back: Vec<Int> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0].0, big);
    }

    #[test]
    fn reduced_qz_only() {
        assert_eq!(parse_reduced_qz("1/2", "x").unwrap(), QZ::new(1, 2));
        assert_eq!(parse_reduced_qz("0", "x").unwrap(), QZ::zero());
        assert!(parse_reduced_qz("2/4", "x").is_err());
        assert!(parse_reduced_qz("3/2", "x").is_err());
        assert!(parse_reduced_qz("-1/2", "x").is_err());
        assert_eq!(qz_string(&QZ::new(3, 4)), "3/4");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse("{\n  \"schema\": 1,\n  \"rank\": \"x\"\n}").unwrap_err();
        assert!(e.location.starts_with("line 3"), "{e}");
        let e = parse("{\"schema\": 2}").unwrap_err();
        assert_eq!(e.location, "schema");
    }
}
