//! JSON interchange: ring descriptors, matrix documents and subspaces.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flock::Subspace;
use crate::linalg::{ModuleMatrix, Orientation};
use crate::matrix::Matrix;
use crate::scalars::{
    BaseElem, FieldElem, FiniteField, Hurwitz, HurwitzScalars, IntegerScalars, Scalars, SkewPoly, SkewScalars,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDescriptor {
    SkewPoly { p: u64, k: usize, modulus: Vec<u64> },
    Integers { p: u64 },
    Hurwitz { p: u64 },
}

impl RingDescriptor {
    pub fn build(&self) -> Result<AnyScalars> {
        match self {
            RingDescriptor::SkewPoly { p, k, modulus } => {
                if modulus.len() != k + 1 {
                    return Err(Error::Schema(format!(
                        "modulus has {} coefficients, expected k + 1 = {}",
                        modulus.len(),
                        k + 1
                    )));
                }
                if modulus.last() == Some(&0) {
                    return Err(Error::Schema("modulus must have degree k".into()));
                }
                Ok(AnyScalars::Skew(SkewScalars::new(FiniteField::new(*p, modulus)?)))
            }
            RingDescriptor::Integers { p } => Ok(AnyScalars::Integers(IntegerScalars::new(*p)?)),
            RingDescriptor::Hurwitz { p } => Ok(AnyScalars::Hurwitz(HurwitzScalars::new(*p)?)),
        }
    }
}

/// Conversion between ring elements and their JSON form.
pub trait Codec: Scalars {
    fn descriptor(&self) -> RingDescriptor;
    fn decode(&self, v: &Value) -> Result<BaseElem<Self>>;
    fn encode(&self, e: &BaseElem<Self>) -> Value;
}

fn field_value(field: &FiniteField, x: FieldElem) -> Value {
    Value::from(field.coords(x))
}

fn field_decode(field: &FiniteField, v: &Value) -> Result<FieldElem> {
    let coords = v
        .as_array()
        .ok_or_else(|| Error::Schema(format!("field element must be a list of residues, got {v}")))?
        .iter()
        .map(|c| c.as_u64().ok_or_else(|| Error::Schema(format!("bad residue {c}"))))
        .collect::<Result<Vec<u64>>>()?;
    if coords.len() != field.degree() {
        return Err(Error::Schema(format!(
            "field element {v} needs {} residues",
            field.degree()
        )));
    }
    field.from_coords(&coords)
}

fn integer_decode(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Schema(format!("`{s}` is not a decimal integer"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Schema(format!("{n} is not an integer"))),
        _ => Err(Error::Schema(format!("expected an integer, got {v}"))),
    }
}

impl Codec for SkewScalars {
    fn descriptor(&self) -> RingDescriptor {
        let f = self.field();
        RingDescriptor::SkewPoly {
            p: f.characteristic(),
            k: f.degree(),
            modulus: f.modulus().to_vec(),
        }
    }
    fn decode(&self, v: &Value) -> Result<SkewPoly> {
        let coeffs = v
            .as_array()
            .ok_or_else(|| Error::Schema(format!("skew polynomial must be a list of coefficients, got {v}")))?
            .iter()
            .map(|c| field_decode(self.field(), c))
            .collect::<Result<Vec<_>>>()?;
        Ok(SkewPoly::new(coeffs))
    }
    fn encode(&self, e: &SkewPoly) -> Value {
        Value::Array(e.coeffs().iter().map(|&c| field_value(self.field(), c)).collect())
    }
}

impl Codec for IntegerScalars {
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Integers { p: self.prime() }
    }
    fn decode(&self, v: &Value) -> Result<BigInt> {
        integer_decode(v)
    }
    fn encode(&self, e: &BigInt) -> Value {
        Value::String(e.to_string())
    }
}

impl Codec for HurwitzScalars {
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Hurwitz { p: self.prime() }
    }
    fn decode(&self, v: &Value) -> Result<Hurwitz> {
        let parts = v
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Schema(format!("Hurwitz element must be [A,B,C,D], got {v}")))?;
        let d: Vec<BigInt> = parts.iter().map(integer_decode).collect::<Result<_>>()?;
        let [a, b, c, e]: [BigInt; 4] = d.try_into().expect("four coordinates");
        Hurwitz::from_doubled([a, b, c, e])
    }
    fn encode(&self, e: &Hurwitz) -> Value {
        Value::Array(e.doubled().iter().map(|x| Value::String(x.to_string())).collect())
    }
}

/// One of the supported scalar contexts.
#[derive(Debug, Clone)]
pub enum AnyScalars {
    Skew(SkewScalars),
    Integers(IntegerScalars),
    Hurwitz(HurwitzScalars),
}

/// A module over one of the supported rings.
#[derive(Debug, Clone)]
pub enum AnyModule {
    Skew(ModuleMatrix<SkewScalars>),
    Integers(ModuleMatrix<IntegerScalars>),
    Hurwitz(ModuleMatrix<HurwitzScalars>),
}

/// Run `$body` with `$m` bound to the typed module inside an [`AnyModule`].
#[macro_export]
macro_rules! with_module {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::document::AnyModule::Skew($m) => $body,
            $crate::document::AnyModule::Integers($m) => $body,
            $crate::document::AnyModule::Hurwitz($m) => $body,
        }
    };
}

/// Map a typed module operation over [`AnyModule`], rewrapping the result.
#[macro_export]
macro_rules! map_module {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::document::AnyModule::Skew($m) => $body.map($crate::document::AnyModule::Skew),
            $crate::document::AnyModule::Integers($m) => $body.map($crate::document::AnyModule::Integers),
            $crate::document::AnyModule::Hurwitz($m) => $body.map($crate::document::AnyModule::Hurwitz),
        }
    };
}

fn default_index_base() -> usize {
    1
}

/// The serialized form of a module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub ring: RingDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub orientation: Orientation,
    #[serde(default = "default_index_base")]
    pub index_base: usize,
    pub entries: Vec<Vec<Value>>,
}

impl MatrixDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Schema(format!("not UTF-8: {e}")))?;
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_module(&self) -> Result<AnyModule> {
        if self.index_base > 1 {
            return Err(Error::Schema(format!("index_base must be 0 or 1, got {}", self.index_base)));
        }
        if self.entries.len() != self.rows {
            return Err(Error::Schema(format!(
                "{} entry rows, expected {}",
                self.entries.len(),
                self.rows
            )));
        }
        if let Some(r) = self.entries.iter().find(|r| r.len() != self.cols) {
            return Err(Error::Schema(format!("entry row of length {}, expected {}", r.len(), self.cols)));
        }
        Ok(match self.ring.build()? {
            AnyScalars::Skew(s) => AnyModule::Skew(self.typed(s)?),
            AnyScalars::Integers(s) => AnyModule::Integers(self.typed(s)?),
            AnyScalars::Hurwitz(s) => AnyModule::Hurwitz(self.typed(s)?),
        })
    }

    fn typed<S: Codec>(&self, s: S) -> Result<ModuleMatrix<S>> {
        let m = Matrix::from_fn(self.rows, self.cols, |i, j| s.decode(&self.entries[i][j]));
        let m = m.try_map(|x| x.clone())?;
        Ok(ModuleMatrix::new(s, m, self.orientation))
    }

    pub fn from_module<S: Codec>(m: &ModuleMatrix<S>, index_base: usize) -> Self {
        let s = m.scalars();
        let a = m.matrix();
        MatrixDocument {
            ring: s.descriptor(),
            rows: a.rows(),
            cols: a.cols(),
            orientation: m.orientation(),
            index_base,
            entries: a.row_vecs().iter().map(|r| r.iter().map(|x| s.encode(x)).collect()).collect(),
        }
    }

    pub fn from_any(m: &AnyModule, index_base: usize) -> Self {
        with_module!(m, x => Self::from_module(x, index_base))
    }

    /// Canonical JSON text (keys sorted).
    pub fn to_json_string(&self) -> String {
        let v = serde_json::to_value(self).expect("documents serialize");
        serde_json::to_string(&v).expect("values serialize")
    }
}

/// Parse and validate a document in one step.
pub fn parse_matrix_document(bytes: &[u8]) -> Result<(MatrixDocument, AnyModule)> {
    let doc = MatrixDocument::parse(bytes)?;
    let m = doc.to_module()?;
    Ok((doc, m))
}

/// Residue field description used for slice output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub modulus: Vec<u64>,
}

/// A subspace of `Lⁿ` given by basis columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceDocument {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<u64>>>,
}

impl SubspaceDocument {
    pub fn new(field: &FiniteField, v: &Subspace) -> Self {
        let b = &v.basis;
        SubspaceDocument {
            field: FieldDescriptor {
                p: field.characteristic(),
                modulus: field.modulus().to_vec(),
            },
            rows: b.rows(),
            cols: b.cols(),
            entries: b.row_vecs().iter().map(|r| r.iter().map(|&x| field.coords(x)).collect()).collect(),
        }
    }

    /// Rows of the basis matrix with entries written as field elements.
    pub fn render(&self) -> Result<String> {
        let field = FiniteField::new(self.field.p, &self.field.modulus)?;
        let mut lines = Vec::with_capacity(self.rows);
        for row in &self.entries {
            let cells = row
                .iter()
                .map(|c| Ok(field.format_elem(field.from_coords(c)?)))
                .collect::<Result<Vec<_>>>()?;
            lines.push(format!("[ {} ]", cells.join("  ")));
        }
        Ok(lines.join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KF: &str = r#"{"ring":{"kind":"skew_poly","p":2,"k":2,"modulus":[1,1,1]},
        "rows":4,"cols":2,"orientation":"right",
        "entries":[[[[1,0]],[]],[[],[[1,0]]],[[[1,0]],[[1,0]]],[[[1,0]],[[0,0],[1,0]]]]}"#;

    #[test]
    fn kf_document_round_trips() {
        let (doc, m) = parse_matrix_document(KF.as_bytes()).unwrap();
        let AnyModule::Skew(ref n) = m else { panic!("expected skew module") };
        assert_eq!((n.matrix().rows(), n.matrix().cols()), (4, 2));
        let back = MatrixDocument::from_any(&m, 1);
        assert_eq!(back, doc);
        let text = back.to_json_string();
        let again = MatrixDocument::parse(text.as_bytes()).unwrap();
        assert_eq!(again.to_json_string(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let reducible = KF.replace("[1,1,1]", "[1,0,1]");
        assert_eq!(parse_matrix_document(reducible.as_bytes()).unwrap_err().exit_code(), 3);
        let parity = r#"{"ring":{"kind":"hurwitz","p":2},"rows":1,"cols":1,"orientation":"right","entries":[[[1,1,0,0]]]}"#;
        assert_eq!(parse_matrix_document(parity.as_bytes()).unwrap_err().exit_code(), 3);
        let short = KF.replace("\"rows\":4", "\"rows\":3");
        assert_eq!(parse_matrix_document(short.as_bytes()).unwrap_err().exit_code(), 2);
        let junk = KF.replace("orientation", "orient");
        assert_eq!(parse_matrix_document(junk.as_bytes()).unwrap_err().exit_code(), 2);
        let ints = r#"{"ring":{"kind":"integers","p":2},"rows":1,"cols":2,"orientation":"left","index_base":0,"entries":[["12",-3]]}"#;
        let (doc, _) = parse_matrix_document(ints.as_bytes()).unwrap();
        assert_eq!(doc.index_base, 0);
    }
}
