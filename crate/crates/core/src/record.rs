//! Machine-readable output records.
//!
//! Big integers travel as decimal strings. An infinite order is written
//! `"infinite"` in JSON and `inf` in CSV.

use serde::{Deserialize, Serialize};

use crate::circulant::AbelianGroup;
use crate::cycpres::{self, HParams};
use crate::error::{Error, Result};
use crate::hclass::{self, Classification, GeneratorBound, NotLogReason};

pub const CSV_COLUMNS: [&str; 9] = [
    "r",
    "n",
    "s",
    "betti",
    "invariant_factors",
    "order",
    "verdict",
    "reason",
    "witness",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusKnotRecord {
    pub r: u64,
    pub n: u64,
    pub presentation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub verdict: String,
    pub reason: Option<String>,
    pub witness: String,
    pub torus_knot: Option<TorusKnotRecord>,
    pub half_params: Option<[u64; 3]>,
}

impl From<&Classification> for ClassificationRecord {
    fn from(c: &Classification) -> Self {
        ClassificationRecord {
            verdict: c.verdict().to_string(),
            reason: c.reason_code().map(str::to_string),
            witness: c.witness(),
            torus_knot: match c {
                Classification::ConfirmedTorusKnot(k) => Some(TorusKnotRecord {
                    r: k.r,
                    n: k.n,
                    presentation: k.presentation(),
                }),
                _ => None,
            },
            half_params: match c {
                Classification::CandidateCaseC { half: (r, n, s) }
                | Classification::NotConnectedLog(NotLogReason::HalfParamsNotPerfect {
                    half: (r, n, s),
                    ..
                }) => Some([*r, *n, *s]),
                _ => None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub kappa: u64,
    pub easy: u64,
    pub hard: u64,
    pub combined: u64,
}

impl From<GeneratorBound> for BoundsRecord {
    fn from(b: GeneratorBound) -> Self {
        BoundsRecord {
            kappa: b.kappa,
            easy: b.easy_bound,
            hard: b.hard_bound,
            combined: b.combined,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub r: u64,
    pub n: u64,
    pub s: u64,
    pub betti: u64,
    pub invariant_factors: Vec<String>,
    pub order: String,
    pub classification: Option<ClassificationRecord>,
    pub bounds: Option<BoundsRecord>,
}

impl OutputRecord {
    /// Abelian invariants only.
    pub fn abelian(p: HParams) -> Self {
        let group = cycpres::abelianization(&cycpres::h_word(p));
        Self::from_group(p, &group)
    }

    /// Abelian invariants plus classification and generator bounds.
    pub fn classified(p: HParams) -> Self {
        let mut rec = Self::abelian(p);
        rec.classification = Some((&hclass::h_classify(p)).into());
        rec.bounds = Some(hclass::d_lower_bound(p).into());
        rec
    }

    pub fn from_group(p: HParams, group: &AbelianGroup) -> Self {
        OutputRecord {
            r: p.r,
            n: p.n,
            s: p.s,
            betti: group.betti as u64,
            invariant_factors: group.invariant_factors.iter().map(|d| d.to_string()).collect(),
            order: group
                .order()
                .map_or_else(|| "infinite".to_string(), |o| o.to_string()),
            classification: None,
            bounds: None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.order == "infinite"
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn csv_fields(&self) -> [String; 9] {
        let (verdict, reason, witness) = match &self.classification {
            Some(c) => (
                c.verdict.clone(),
                c.reason.clone().unwrap_or_default(),
                c.witness.clone(),
            ),
            None => Default::default(),
        };
        [
            self.r.to_string(),
            self.n.to_string(),
            self.s.to_string(),
            self.betti.to_string(),
            self.invariant_factors.join(";"),
            if self.is_infinite() {
                "inf".to_string()
            } else {
                self.order.clone()
            },
            verdict,
            reason,
            witness,
        ]
    }

    /// CSV text with header row.
    pub fn to_csv(records: &[OutputRecord]) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Serialization(e.to_string());
        w.write_record(CSV_COLUMNS).map_err(err)?;
        for rec in records {
            w.write_record(rec.csv_fields()).map_err(err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Serialization(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn to_plain(&self) -> String {
        let factors = if self.invariant_factors.is_empty() {
            "-".to_string()
        } else {
            self.invariant_factors.join(", ")
        };
        let mut out = format!(
            "H({},{},{})\n  betti: {}\n  invariant factors: {}\n  order: {}\n",
            self.r, self.n, self.s, self.betti, factors, self.order
        );
        if let Some(c) = &self.classification {
            out += &format!("  verdict: {}\n", c.verdict);
            if let Some(reason) = &c.reason {
                out += &format!("  reason: {reason}\n");
            }
            out += &format!("  witness: {}\n", c.witness);
            if let Some(k) = &c.torus_knot {
                out += &format!("  torus knot: ({},{}) {}\n", k.r, k.n, k.presentation);
            }
        }
        if let Some(b) = &self.bounds {
            out += &format!(
                "  d(H^ab) bounds: kappa={} easy={} hard={} combined={}\n",
                b.kappa, b.easy, b.hard, b.combined
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(r: u64, n: u64, s: u64) -> HParams {
        HParams::new(r, n, s).unwrap()
    }

    #[test]
    fn abelian_records() {
        let rec = OutputRecord::abelian(hp(3, 5, 2));
        assert_eq!(rec.order, "16");
        assert_eq!(rec.betti, 0);
        assert!(rec.classification.is_none());

        let rec = OutputRecord::abelian(hp(1, 2, 1));
        assert_eq!(rec.order, "infinite");
        assert_eq!(rec.csv_fields()[5], "inf");

        let rec = OutputRecord::abelian(hp(2, 3, 1));
        assert_eq!(rec.invariant_factors, vec!["2", "2"]);
        assert_eq!(rec.csv_fields()[4], "2;2");
    }

    #[test]
    fn classified_records() {
        let rec = OutputRecord::classified(hp(2, 5, 2));
        let c = rec.classification.as_ref().unwrap();
        assert_eq!(c.verdict, "ConfirmedLOG_TorusKnot");
        assert_eq!(c.witness, "a^5=b^2");
        assert_eq!(c.torus_knot.as_ref().unwrap().presentation, "<a,b | a^5=b^2>");

        let rec = OutputRecord::classified(hp(6, 8, 4));
        let c = rec.classification.as_ref().unwrap();
        assert_eq!(c.reason.as_deref(), Some("HALF_PARAMS_NOT_PERFECT"));
        assert_eq!(c.witness, "5");
        assert_eq!(rec.bounds.as_ref().unwrap().hard, 2);
    }

    #[test]
    fn csv_header_and_quoting() {
        let recs = vec![
            OutputRecord::classified(hp(6, 10, 4)),
            OutputRecord::abelian(hp(3, 5, 2)),
        ];
        let text = OutputRecord::to_csv(&recs).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "r,n,s,betti,invariant_factors,order,verdict,reason,witness"
        );
        assert_eq!(
            lines.next().unwrap(),
            "6,10,4,1,2;2;2;2;2;2;2;2,inf,NotConnectedLOG,GCD_N_RPLUSS_NE_2,\"(n,r+s)=10\""
        );
        assert_eq!(lines.next().unwrap(), "3,5,2,0,2;2;2;2,16,,,");
    }

    #[test]
    fn json_round_trip() {
        let rec = OutputRecord::classified(hp(4, 6, 2));
        let json = rec.to_json().unwrap();
        let back = OutputRecord::from_json(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.to_json().unwrap(), json);
    }
}
