//! Machine-readable results. Every rational is an exact string.

use std::collections::BTreeMap;

use gfc_core::{
    check_orthogonality, CertificateBundle, Classification, DerivedSequences, FamilyParams, GenFunSpec,
    Poly, PolySeq, Recurrence,
};
use serde::{Deserialize, Serialize};

use crate::exact::{exacts, Exact};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDoc {
    pub command: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    /// `polys[n]` lists the coefficients of `P_n`, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<Vec<Exact>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<RowDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    pub kind: String,
    pub lambda1: Exact,
    pub lambda2: Exact,
    pub t1: Exact,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Exact>,
    pub scale_sq: Exact,
    pub orthogonal: bool,
    pub orthogonality_reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub ttrr_valid_to: usize,
    pub ttrr_holds: bool,
    /// check label -> "pass" | "fail" | "not_applicable"
    pub checks: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<Exact>>,
    pub detail: String,
}

/// One row of the per-index table; absent entries are undefined at that `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureDoc {
    pub n: usize,
    pub residual: Vec<Exact>,
}

pub fn poly_doc(p: &Poly) -> Vec<Exact> {
    exacts(p.coeffs())
}

pub fn polys_doc(ps: &PolySeq) -> Vec<Vec<Exact>> {
    ps.polys().iter().map(poly_doc).collect()
}

pub fn params_doc(p: &FamilyParams) -> ParamsDoc {
    let o = check_orthogonality(p);
    ParamsDoc {
        kind: p.kind.label().into(),
        lambda1: (&p.lambda1).into(),
        lambda2: (&p.lambda2).into(),
        t1: (&p.t1).into(),
        lambda: p.lambda.as_ref().map(Exact::from),
        scale_sq: (&p.scale_sq).into(),
        orthogonal: o.orthogonal,
        orthogonality_reason: format!("{:?}", o.reason),
    }
}

pub fn certificate_doc(c: &CertificateBundle) -> CertificateDoc {
    CertificateDoc {
        ttrr_valid_to: c.ttrr_valid_to,
        ttrr_holds: c.ttrr_holds,
        checks: c.checks.iter().map(|(k, v)| (k.label().into(), v.label().into())).collect(),
        witnesses: c
            .witnesses
            .iter()
            .map(|(k, w)| {
                (
                    k.label().into(),
                    WitnessDoc {
                        n: w.n,
                        k: w.k,
                        residual: w.residual.as_ref().map(poly_doc),
                        detail: w.detail.clone(),
                    },
                )
            })
            .collect(),
    }
}

pub fn table_doc(spec: &GenFunSpec, rec: &Recurrence) -> Vec<RowDoc> {
    let derived = DerivedSequences::new(spec, rec);
    (0..=rec.valid_to)
        .map(|n| RowDoc {
            n,
            beta: rec.beta(n).map(Exact::from),
            omega: rec.omega(n).map(Exact::from),
            a: derived.as_ref().and_then(|d| d.a(n)).map(Exact::from),
            c: derived.as_ref().and_then(|d| d.c(n)).map(Exact::from),
        })
        .collect()
}

impl ResultDoc {
    pub fn new(command: &str, order: usize) -> Self {
        ResultDoc {
            command: command.into(),
            order,
            verdict: None,
            params: None,
            certificate: None,
            polys: None,
            table: None,
            failure: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn from_classification(spec: &GenFunSpec, c: &Classification) -> Self {
        let mut doc = ResultDoc::new("classify", spec.order());
        doc.verdict = Some(c.verdict.label().into());
        doc.params = c.params.as_ref().map(params_doc);
        doc.certificate = c.certificate.as_ref().map(certificate_doc);
        doc.polys = c.polys.as_ref().map(polys_doc);
        if let Some(rec) = &c.recurrence {
            doc.table = Some(table_doc(spec, rec));
            doc.failure = rec.failure.as_ref().map(|f| FailureDoc { n: f.n, residual: poly_doc(&f.residual) });
        }
        doc.diagnostics = c.diagnostics.clone();
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result docs always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gfc_core::families::family_alpha;
    use gfc_core::rational::int;
    use gfc_core::classify;

    #[test]
    fn classification_round_trips() {
        let params = FamilyParams::ultraspherical(int(1), int(2), int(1)).unwrap();
        let spec = GenFunSpec::quadratic(family_alpha(&params, 9).unwrap(), int(1)).unwrap();
        let doc = ResultDoc::from_classification(&spec, &classify(&spec).unwrap());
        assert_eq!(doc.params.as_ref().unwrap().lambda, Some(Exact(gfc_core::rational::frac(1, 2))));
        let back = ResultDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert!(!doc.to_json().contains('.'), "no decimal points in exact output");
    }
}
