//! JSON file formats with exact string-encoded scalars.
//!
//! Every file is written in one canonical form: object keys sorted, sparse
//! entries sorted by index and printed one per line. References between
//! files are `sha256:` digests of the referenced file's canonical text, so
//! they survive reformatting of the referenced file.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::comod::ComoduleAlgebraData;
use crate::datum::{DynamicalDatum, MonomialHopfSpec};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::{AlgebraData, HopfAlgebraData};
use crate::limits::check_dim;
use crate::linalg::Matrix;
use crate::rep::ModuleRep;
use crate::scalar::Cyclo;
use crate::twist::{GaugeElement, TwistElement};

/// Hopf algebra: `mult` holds (i, j, k, c) with e_i·e_j ∋ c·e_k, `comult`
/// holds (k, i, j, c) with Δ(e_k) ∋ c·e_i⊗e_j, `antipode` holds (i, a, c)
/// with S(e_i) ∋ c·e_a.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    pub order: u32,
    pub labels: Vec<String>,
    pub unit: Vec<(usize, String)>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub comult: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<(usize, String)>,
    pub antipode: Vec<(usize, usize, String)>,
}

/// Left H-comodule algebra; `coaction` holds (k, h, k′, c) with δ(e_k) ∋ c·e_h⊗e_{k′}.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ComoduleFile {
    pub hopf: String,
    pub order: u32,
    pub labels: Vec<String>,
    pub unit: Vec<(usize, String)>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub coaction: Vec<(usize, usize, usize, String)>,
}

/// Left module; `action` holds (i, row, col, c), the entries of ρ(e_i).
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<(usize, usize, usize, String)>,
}

/// J ∈ H⊗H⊗S as (i, j, k, c).
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct TwistFile {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "S")]
    pub s: String,
    pub coeffs: Vec<(usize, usize, usize, String)>,
}

/// t ∈ H⊗S as (a, k, c).
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct GaugeFile {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "S")]
    pub s: String,
    pub coeffs: Vec<(usize, usize, String)>,
}

/// Parameters of a monomial dynamical datum. `order` is the cyclotomic
/// field order N; when absent it is the lcm of n and every explicit
/// `[…]@M` order among the scalars.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub group: Vec<Vec<usize>>,
    pub chi: Vec<String>,
    pub g: usize,
    pub n: usize,
    #[serde(rename = "F")]
    pub f: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    pub mu: String,
}

/// Canonical text: sorted keys, one sparse entry per line, trailing newline.
pub fn to_canonical<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("format structs serialize");
    let Value::Object(map) = value else {
        return format!("{value}\n");
    };
    let mut out = String::from("{\n");
    let n = map.len();
    for (idx, (k, v)) in map.iter().enumerate() {
        out.push_str(&format!("  {}: ", Value::String(k.clone())));
        match v {
            Value::Array(items)
                if !items.is_empty() && items.iter().all(|x| x.is_array() || x.is_object()) =>
            {
                out.push_str("[\n");
                let lines: Vec<String> = items.iter().map(|x| format!("    {x}")).collect();
                out.push_str(&lines.join(",\n"));
                out.push_str("\n  ]");
            }
            _ => out.push_str(&v.to_string()),
        }
        out.push_str(if idx + 1 < n { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

pub fn sha256_ref(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn parse_json<T: DeserializeOwned>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn scalar(s: &str, order: u32, at: impl FnOnce() -> String) -> Result<Cyclo> {
    Cyclo::parse(s, order).map_err(|e| Error::Parse(format!("{}: {e}", at())))
}

fn check_ref(what: &str, got: &str, expected: &str) -> Result<()> {
    if got != expected {
        return Err(Error::CorruptInput(format!(
            "{what} reference {got} does not match the supplied file ({expected})"
        )));
    }
    Ok(())
}

fn check_order(order: u32) -> Result<()> {
    if order == 0 {
        return Err(Error::Parse(
            "order: cyclotomic field order must be positive".into(),
        ));
    }
    Ok(())
}

fn nonzero<T>(v: &[Cyclo], f: impl Fn(usize, &Cyclo) -> T) -> Vec<T> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| f(i, c))
        .collect()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn algebra_entries(a: &AlgebraData) -> Vec<(usize, usize, usize, String)> {
    let d = a.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.basis_product(i, j) {
                out.push((i, j, *k, c.to_string()));
            }
        }
    }
    sorted(out)
}

fn read_algebra(
    what: &str,
    order: u32,
    labels: &[String],
    unit: &[(usize, String)],
    mult: &[(usize, usize, usize, String)],
) -> Result<AlgebraData> {
    check_order(order)?;
    let d = labels.len();
    check_dim(&format!("{what} multiplication table"), d * d)?;
    let mut u = crate::linalg::zero_vec(d, order);
    for (p, (i, s)) in unit.iter().enumerate() {
        if *i >= d {
            return Err(Error::Parse(format!(
                "{what}: unit[{p}] index {i} out of range"
            )));
        }
        u[*i] = &u[*i] + &scalar(s, order, || format!("{what}: unit[{p}]"))?;
    }
    let entries = mult
        .iter()
        .enumerate()
        .map(|(p, (i, j, k, s))| {
            Ok((
                *i,
                *j,
                *k,
                scalar(s, order, || format!("{what}: mult[{p}]"))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraData::from_entries(d, order, u, labels.to_vec(), entries)
}

impl HopfFile {
    pub fn from_hopf(h: &HopfAlgebraData) -> Self {
        let a = h.alg();
        let d = h.dim();
        let mut comult = Vec::new();
        for k in 0..d {
            for (i, j, c) in h.comult_of(k) {
                comult.push((k, *i, *j, c.to_string()));
            }
        }
        let s = h.antipode();
        let mut antipode = Vec::new();
        for i in 0..d {
            for a_ in 0..d {
                if !s[(a_, i)].is_zero() {
                    antipode.push((i, a_, s[(a_, i)].to_string()));
                }
            }
        }
        HopfFile {
            order: h.order(),
            labels: a.labels().to_vec(),
            unit: nonzero(a.unit(), |i, c| (i, c.to_string())),
            mult: algebra_entries(a),
            comult: sorted(comult),
            counit: nonzero(h.counit(), |i, c| (i, c.to_string())),
            antipode: sorted(antipode),
        }
    }

    pub fn to_hopf(&self) -> Result<HopfAlgebraData> {
        let o = self.order;
        let alg = Arc::new(read_algebra(
            "hopf",
            o,
            &self.labels,
            &self.unit,
            &self.mult,
        )?);
        let d = alg.dim();
        let mut comult = vec![Vec::new(); d];
        for (p, (k, i, j, s)) in self.comult.iter().enumerate() {
            if *k >= d {
                return Err(Error::Parse(format!(
                    "hopf: comult[{p}] index {k} out of range"
                )));
            }
            comult[*k].push((*i, *j, scalar(s, o, || format!("hopf: comult[{p}]"))?));
        }
        let mut counit = crate::linalg::zero_vec(d, o);
        for (p, (i, s)) in self.counit.iter().enumerate() {
            if *i >= d {
                return Err(Error::Parse(format!(
                    "hopf: counit[{p}] index {i} out of range"
                )));
            }
            counit[*i] = &counit[*i] + &scalar(s, o, || format!("hopf: counit[{p}]"))?;
        }
        let mut anti = Matrix::zeros(d, d, o);
        for (p, (i, a, s)) in self.antipode.iter().enumerate() {
            if *i >= d || *a >= d {
                return Err(Error::Parse(format!(
                    "hopf: antipode[{p}] index out of range"
                )));
            }
            anti[(*a, *i)] = &anti[(*a, *i)] + &scalar(s, o, || format!("hopf: antipode[{p}]"))?;
        }
        let antipode = (!self.antipode.is_empty()).then_some(anti);
        HopfAlgebraData::new(alg, comult, counit, antipode)
    }
}

impl ComoduleFile {
    pub fn from_comodule(k: &ComoduleAlgebraData, hopf_ref: &str) -> Self {
        let a = k.alg();
        let mut coaction = Vec::new();
        for i in 0..k.dim() {
            for (h, kk, c) in k.coaction_of(i) {
                coaction.push((i, *h, *kk, c.to_string()));
            }
        }
        ComoduleFile {
            hopf: hopf_ref.to_string(),
            order: k.order(),
            labels: a.labels().to_vec(),
            unit: nonzero(a.unit(), |i, c| (i, c.to_string())),
            mult: algebra_entries(a),
            coaction: sorted(coaction),
        }
    }

    pub fn to_comodule(&self, h: &Loaded<HopfAlgebraData>) -> Result<ComoduleAlgebraData> {
        check_ref("comodule: hopf", &self.hopf, &h.reference)?;
        let o = self.order;
        let alg = Arc::new(read_algebra(
            "comodule",
            o,
            &self.labels,
            &self.unit,
            &self.mult,
        )?);
        let mut coaction = vec![Vec::new(); alg.dim()];
        for (p, (k, hh, kk, s)) in self.coaction.iter().enumerate() {
            if *k >= alg.dim() {
                return Err(Error::Parse(format!(
                    "comodule: coaction[{p}] index {k} out of range"
                )));
            }
            coaction[*k].push((
                *hh,
                *kk,
                scalar(s, o, || format!("comodule: coaction[{p}]"))?,
            ));
        }
        ComoduleAlgebraData::new(alg, h.value.clone(), coaction)
    }
}

impl ModuleFile {
    pub fn from_module(m: &ModuleRep, algebra_ref: &str) -> Self {
        let mut action = Vec::new();
        for (i, mat) in m.actions().iter().enumerate() {
            for r in 0..mat.rows() {
                for c in 0..mat.cols() {
                    if !mat[(r, c)].is_zero() {
                        action.push((i, r, c, mat[(r, c)].to_string()));
                    }
                }
            }
        }
        ModuleFile {
            algebra: algebra_ref.to_string(),
            dim: m.dim(),
            action,
        }
    }

    pub fn to_module(&self, algebra: &Arc<AlgebraData>, algebra_ref: &str) -> Result<ModuleRep> {
        check_ref("module: algebra", &self.algebra, algebra_ref)?;
        let (d, o) = (self.dim, algebra.order());
        check_dim("module action", algebra.dim() * d * d)?;
        let mut action = vec![Matrix::zeros(d, d, o); algebra.dim()];
        for (p, (i, r, c, s)) in self.action.iter().enumerate() {
            if *i >= algebra.dim() || *r >= d || *c >= d {
                return Err(Error::Parse(format!(
                    "module: action[{p}] index out of range"
                )));
            }
            action[*i][(*r, *c)] = scalar(s, o, || format!("module: action[{p}]"))?;
        }
        ModuleRep::new(algebra.clone(), d, action)
    }
}

impl TwistFile {
    pub fn from_twist(j: &TwistElement, h_ref: &str, s_ref: &str) -> Self {
        let coeffs = j
            .terms()
            .into_iter()
            .map(|(i, jj, k, c)| (i, jj, k, c.to_string()))
            .collect();
        TwistFile {
            h: h_ref.into(),
            s: s_ref.into(),
            coeffs,
        }
    }

    pub fn to_twist(
        &self,
        h: &Loaded<HopfAlgebraData>,
        s: &Loaded<ComoduleAlgebraData>,
    ) -> Result<TwistElement> {
        check_ref("twist: H", &self.h, &h.reference)?;
        check_ref("twist: S", &self.s, &s.reference)?;
        let (dh, ds, o) = (h.value.dim(), s.value.dim(), h.value.order());
        check_dim("twist", dh * dh * ds)?;
        let mut coeffs = crate::linalg::zero_vec(dh * dh * ds, o);
        for (p, (i, j, k, c)) in self.coeffs.iter().enumerate() {
            if *i >= dh || *j >= dh || *k >= ds {
                return Err(Error::Parse(format!(
                    "twist: coeffs[{p}] index out of range"
                )));
            }
            coeffs[(i * dh + j) * ds + k] = scalar(c, o, || format!("twist: coeffs[{p}]"))?;
        }
        TwistElement::new(h.value.clone(), s.value.clone(), coeffs)
    }
}

impl GaugeFile {
    pub fn from_gauge(t: &GaugeElement, ds: usize, h_ref: &str, s_ref: &str) -> Self {
        let coeffs = nonzero(t.coeffs(), |p, c| (p / ds, p % ds, c.to_string()));
        GaugeFile {
            h: h_ref.into(),
            s: s_ref.into(),
            coeffs,
        }
    }

    pub fn to_gauge(
        &self,
        h: &Loaded<HopfAlgebraData>,
        s: &Loaded<ComoduleAlgebraData>,
    ) -> Result<GaugeElement> {
        check_ref("gauge: H", &self.h, &h.reference)?;
        check_ref("gauge: S", &self.s, &s.reference)?;
        let (dh, ds, o) = (h.value.dim(), s.value.dim(), h.value.order());
        let mut coeffs = crate::linalg::zero_vec(dh * ds, o);
        for (p, (a, k, c)) in self.coeffs.iter().enumerate() {
            if *a >= dh || *k >= ds {
                return Err(Error::Parse(format!(
                    "gauge: coeffs[{p}] index out of range"
                )));
            }
            coeffs[a * ds + k] = scalar(c, o, || format!("gauge: coeffs[{p}]"))?;
        }
        GaugeElement::new(h.value.clone(), s.value.clone(), coeffs)
    }
}

fn explicit_order(s: &str) -> Option<u32> {
    s.trim()
        .rsplit_once("]@")
        .and_then(|(_, m)| m.trim().parse().ok())
}

fn lcm(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

impl DatumFile {
    pub fn from_spec(
        name: &str,
        spec: &MonomialHopfSpec,
        f: &[usize],
        b: &[usize],
        mu: &Cyclo,
    ) -> Self {
        DatumFile {
            name: Some(name.to_string()),
            order: Some(spec.order()),
            group: spec.group.table().to_vec(),
            chi: spec.chi.iter().map(Cyclo::to_string).collect(),
            g: spec.g,
            n: spec.n,
            f: f.to_vec(),
            b: b.to_vec(),
            mu: mu.to_string(),
        }
    }

    /// The field order N, explicit or inferred.
    pub fn field_order(&self) -> Result<u32> {
        if let Some(o) = self.order {
            check_order(o)?;
            return Ok(o);
        }
        let n = u32::try_from(self.n).map_err(|_| Error::Parse("datum: n out of range".into()))?;
        Ok(self
            .chi
            .iter()
            .chain(std::iter::once(&self.mu))
            .filter_map(|s| explicit_order(s))
            .fold(n.max(1), lcm))
    }

    pub fn to_spec(&self) -> Result<(MonomialHopfSpec, Cyclo)> {
        let o = self.field_order()?;
        let chi = self
            .chi
            .iter()
            .enumerate()
            .map(|(p, s)| scalar(s, o, || format!("datum: chi[{p}]")))
            .collect::<Result<Vec<_>>>()?;
        let mu = scalar(&self.mu, o, || "datum: mu".to_string())?;
        let spec = MonomialHopfSpec {
            group: FiniteGroup::from_table(self.group.clone())?,
            chi,
            g: self.g,
            n: self.n,
        };
        Ok((spec, mu))
    }

    /// Builds and validates the datum; overlapping B and ⟨g⟩ is rejected here.
    pub fn to_datum(&self) -> Result<DynamicalDatum> {
        let (spec, mu) = self.to_spec()?;
        check_dim("monomial Hopf algebra", spec.dim() * spec.dim())?;
        let name = self.name.clone().unwrap_or_else(|| "datum".into());
        DynamicalDatum::monomial(name, spec, self.f.clone(), self.b.clone(), mu)
    }
}

/// A parsed object together with its canonical reference.
#[derive(Clone, Debug)]
pub struct Loaded<T> {
    pub value: Arc<T>,
    pub reference: String,
}

pub fn hopf_text(h: &HopfAlgebraData) -> String {
    to_canonical(&HopfFile::from_hopf(h))
}

pub fn comodule_text(k: &ComoduleAlgebraData, hopf_ref: &str) -> String {
    to_canonical(&ComoduleFile::from_comodule(k, hopf_ref))
}

pub fn load_hopf(text: &str) -> Result<Loaded<HopfAlgebraData>> {
    let file: HopfFile = parse_json("hopf", text)?;
    let h = file.to_hopf()?;
    let reference = sha256_ref(hopf_text(&h).as_bytes());
    Ok(Loaded {
        value: Arc::new(h),
        reference,
    })
}

pub fn load_comodule(
    text: &str,
    h: &Loaded<HopfAlgebraData>,
) -> Result<Loaded<ComoduleAlgebraData>> {
    let file: ComoduleFile = parse_json("comodule", text)?;
    let k = file.to_comodule(h)?;
    let reference = sha256_ref(comodule_text(&k, &h.reference).as_bytes());
    Ok(Loaded {
        value: Arc::new(k),
        reference,
    })
}

pub fn load_module(text: &str, algebra: &Arc<AlgebraData>, algebra_ref: &str) -> Result<ModuleRep> {
    parse_json::<ModuleFile>("module", text)?.to_module(algebra, algebra_ref)
}

pub fn load_twist(
    text: &str,
    h: &Loaded<HopfAlgebraData>,
    s: &Loaded<ComoduleAlgebraData>,
) -> Result<TwistElement> {
    parse_json::<TwistFile>("twist", text)?.to_twist(h, s)
}

pub fn load_gauge(
    text: &str,
    h: &Loaded<HopfAlgebraData>,
    s: &Loaded<ComoduleAlgebraData>,
) -> Result<GaugeElement> {
    parse_json::<GaugeFile>("gauge", text)?.to_gauge(h, s)
}

pub fn load_datum(text: &str) -> Result<DatumFile> {
    parse_json("datum", text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_round_trip_is_stable() {
        let d = DynamicalDatum::e1().unwrap();
        let text = hopf_text(&d.h);
        let loaded = load_hopf(&text).unwrap();
        assert_eq!(loaded.value.as_ref(), d.h.as_ref());
        assert_eq!(hopf_text(&loaded.value), text);
        assert_eq!(loaded.reference, sha256_ref(text.as_bytes()));
    }

    #[test]
    fn reference_ignores_formatting() {
        let d = DynamicalDatum::e0().unwrap();
        let text = hopf_text(&d.h);
        let compact: Value = serde_json::from_str(&text).unwrap();
        let loaded = load_hopf(&compact.to_string()).unwrap();
        assert_eq!(loaded.reference, sha256_ref(text.as_bytes()));
    }

    #[test]
    fn comodule_module_twist_round_trip() {
        let d = DynamicalDatum::e0().unwrap();
        let h = load_hopf(&hopf_text(&d.h)).unwrap();
        let ktext = comodule_text(&d.k, &h.reference);
        let k = load_comodule(&ktext, &h).unwrap();
        assert_eq!(k.value.as_ref(), d.k.as_ref());
        assert_eq!(comodule_text(&k.value, &h.reference), ktext);

        let m = ModuleRep::regular(d.k.alg().clone());
        let mtext = to_canonical(&ModuleFile::from_module(&m, &k.reference));
        let back = load_module(&mtext, k.value.alg(), &k.reference).unwrap();
        assert_eq!(back.actions(), m.actions());

        let s = load_comodule(&comodule_text(d.base_comodule(), &h.reference), &h).unwrap();
        let j = TwistElement::identity(h.value.clone(), s.value.clone()).unwrap();
        let jtext = to_canonical(&TwistFile::from_twist(&j, &h.reference, &s.reference));
        assert_eq!(load_twist(&jtext, &h, &s).unwrap().coeffs(), j.coeffs());
    }

    #[test]
    fn malformed_scalar_reports_location() {
        let d = DynamicalDatum::e0().unwrap();
        let text = hopf_text(&d.h).replacen("\"-1\"", "\"1/0\"", 1);
        let err = load_hopf(&text).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        assert!(err.to_string().contains('['), "{err}");
    }

    #[test]
    fn mismatched_reference_is_rejected() {
        let d = DynamicalDatum::e0().unwrap();
        let h = load_hopf(&hopf_text(&d.h)).unwrap();
        let bad = comodule_text(&d.k, "sha256:00");
        assert!(matches!(
            load_comodule(&bad, &h),
            Err(Error::CorruptInput(_))
        ));
    }

    #[test]
    fn datum_order_is_inferred() {
        let d = DatumFile {
            name: None,
            order: None,
            group: FiniteGroup::cyclic(3).table().to_vec(),
            chi: vec!["1".into(), "[0,1]@3".into(), "[-1,-1]@3".into()],
            g: 1,
            n: 3,
            f: vec![0, 1, 2],
            b: vec![0],
            mu: "1".into(),
        };
        assert_eq!(d.field_order().unwrap(), 3);
        let text = to_canonical(&d);
        assert_eq!(load_datum(&text).unwrap(), d);
    }
}
