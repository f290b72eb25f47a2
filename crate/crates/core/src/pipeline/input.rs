use serde::{Deserialize, Serialize};

use crate::algebra::{PolyMatrix, PolyVec};
use crate::error::{Error, Result};
use crate::poisson::LieAlgebra;
use crate::poly::Chart;
use crate::scalar::Rational;
use crate::QMultivector;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Bivector,
    LieAlgebra,
}

/// Coefficient of `∂_i∧∂_j`, with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorEntry {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

/// Structure constant `c^k_ij` of `[e_i, e_j] = Σ_k c^k_ij e_k`, with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

/// One structure description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bivector: Vec<BivectorEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure_constants: Vec<ConstantEntry>,
    /// Vector fields as component lists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_distribution: Option<Vec<Vec<String>>>,
}

/// Parses a JSON document; syntax and schema errors carry line and column.
pub fn parse_input(src: &str) -> Result<InputDoc> {
    serde_json::from_str(src).map_err(|e| Error::Document {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl InputDoc {
    pub fn chart(&self) -> Result<Chart> {
        if self.coordinates.is_empty() {
            return Err(Error::Input("no coordinates given".into()));
        }
        let mut seen = self.coordinates.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.coordinates.len() {
            return Err(Error::Input("coordinate names must be distinct".into()));
        }
        Ok(Chart::new(self.coordinates.iter().cloned()))
    }

    /// The bivector described by the document, on its chart.
    pub fn bivector(&self) -> Result<QMultivector> {
        let chart = self.chart()?;
        let n = chart.dim();
        match self.mode {
            Mode::Bivector => {
                let mut pi = QMultivector::zero(&chart, 2);
                for (idx, e) in self.bivector.iter().enumerate() {
                    if e.i >= e.j || e.j >= n {
                        return Err(Error::Input(format!(
                            "bivector[{idx}]: indices ({}, {}) must satisfy i < j < {n}",
                            e.i, e.j
                        )));
                    }
                    let c = chart
                        .parse(&e.coeff)
                        .map_err(|err| Error::Input(format!("bivector[{idx}].coeff: {err}")))?;
                    pi.add_component(&[e.i, e.j], c);
                }
                Ok(pi)
            }
            Mode::LieAlgebra => Ok(self.lie_algebra()?.linear_bivector().with_chart(&chart)?),
        }
    }

    pub fn lie_algebra(&self) -> Result<LieAlgebra> {
        let n = self.coordinates.len();
        let mut entries = Vec::with_capacity(self.structure_constants.len());
        for (idx, e) in self.structure_constants.iter().enumerate() {
            if e.i >= e.j {
                return Err(Error::Input(format!("structure_constants[{idx}]: need i < j")));
            }
            let c: Rational = e
                .c
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("structure_constants[{idx}].c: not a rational number")))?;
            entries.push((e.i, e.j, e.k, c));
        }
        LieAlgebra::new(n, &entries)
    }

    /// Parsed declared distribution with its generic rank.
    pub fn declared(&self) -> Result<Option<(usize, Vec<PolyVec<Rational>>)>> {
        let Some(rows) = &self.declared_distribution else {
            return Ok(None);
        };
        let chart = self.chart()?;
        let n = chart.dim();
        let mut gens = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "declared_distribution[{r}]: expected {n} components, got {}",
                    row.len()
                )));
            }
            let v = row
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    chart
                        .parse(s)
                        .map_err(|err| Error::Input(format!("declared_distribution[{r}][{c}]: {err}")))
                })
                .collect::<Result<PolyVec<Rational>>>()?;
            gens.push(v);
        }
        let rank = if gens.is_empty() {
            0
        } else {
            PolyMatrix::from_rows(n, &gens).generic_rank()
        };
        Ok(Some((rank, gens)))
    }

    /// Equivalent document with rendered coefficients, zero entries dropped and
    /// entries sorted.
    pub fn canonical(&self) -> Result<InputDoc> {
        let chart = self.chart()?;
        let mut out = self.clone();
        match self.mode {
            Mode::Bivector => {
                let pi = self.bivector()?;
                out.bivector = pi
                    .components()
                    .into_iter()
                    .map(|(idx, c)| BivectorEntry {
                        i: idx[0],
                        j: idx[1],
                        coeff: chart.render(c),
                    })
                    .collect();
            }
            Mode::LieAlgebra => {
                let alg = self.lie_algebra()?;
                let n = alg.dim();
                out.structure_constants = (0..n)
                    .flat_map(|i| (i + 1..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
                    .filter(|&(i, j, k)| !num_traits::Zero::is_zero(alg.constant(i, j, k)))
                    .map(|(i, j, k)| ConstantEntry {
                        i,
                        j,
                        k,
                        c: alg.constant(i, j, k).to_string(),
                    })
                    .collect();
            }
        }
        if let Some((_, gens)) = self.declared()? {
            out.declared_distribution = Some(
                gens.iter()
                    .map(|v| v.iter().map(|p| chart.render(p)).collect())
                    .collect(),
            );
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_document() {
        let doc = parse_input(r#"{"coordinates": ["x","y","t"], "bivector": [{"i": 0, "j": 1, "coeff": "t"}]}"#).unwrap();
        assert_eq!(doc.mode, Mode::Bivector);
        let pi = doc.bivector().unwrap();
        assert_eq!(pi.component(&[0, 1]), pi.chart().parse("t").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_input("{\n  \"coordinates\": [\"x\",\n  }") {
            Err(Error::Document { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let doc = parse_input(r#"{"coordinates": ["x","y"], "bivector": [{"i": 0, "j": 1, "coeff": "x + q"}]}"#).unwrap();
        let msg = doc.bivector().unwrap_err().to_string();
        assert!(msg.contains("bivector[0].coeff") && msg.contains("column 5"), "{msg}");
        let bad = parse_input(r#"{"coordinates": ["x","y"], "bivector": [{"i": 1, "j": 0, "coeff": "x"}]}"#).unwrap();
        assert!(bad.bivector().is_err());
    }

    #[test]
    fn lie_algebra_mode() {
        let doc = parse_input(
            r#"{"coordinates": ["x","y","z"], "mode": "lie_algebra",
                "structure_constants": [{"i":0,"j":1,"k":2,"c":"1"},{"i":1,"j":2,"k":0,"c":"1"},{"i":0,"j":2,"k":1,"c":"-1"}]}"#,
        )
        .unwrap();
        let pi = doc.bivector().unwrap();
        assert_eq!(pi.chart().names(), &["x", "y", "z"]);
        assert_eq!(pi.component(&[1, 2]), pi.chart().parse("x").unwrap());
    }

    #[test]
    fn canonical_round_trip() {
        let doc = parse_input(
            r#"{"coordinates": ["x","y","t"], "bivector": [{"i": 1, "j": 2, "coeff": "0"}, {"i": 0, "j": 1, "coeff": "t*2 - t"}],
                "declared_distribution": [["1","0","0"],["0","1 + 0*x","0"]]}"#,
        )
        .unwrap();
        let canon = doc.canonical().unwrap();
        assert_eq!(canon.bivector.len(), 1);
        let again = parse_input(&canon.to_json()).unwrap();
        assert_eq!(again, canon);
        assert_eq!(again.canonical().unwrap(), canon);
    }
}
