use serde::{Deserialize, Serialize};

use super::{certify_from_counts, RatioCertificate, Status, FORMAT};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Certified, reproduced exactly, every inequality holds.
    pub ok: bool,
    pub status: Status,
    pub r_final: Option<f64>,
    pub problems: Vec<String>,
}

/// Recomputes the certificate from its stored counts and compares.
pub fn verify(cert: &RatioCertificate) -> VerifyReport {
    let mut problems = Vec::new();
    if cert.format != FORMAT {
        problems.push(format!("unknown format {:?}", cert.format));
    }
    for c in &cert.checks {
        if c.relation.holds(c.lhs_bounds, c.rhs_bounds) != c.verdict {
            problems.push(format!("stored verdict of {:?} disagrees with its bounds", c.name));
        }
        if !c.verdict {
            problems.push(format!("{:?} fails", c.name));
        }
    }
    let mut replay = certify_from_counts(cert.inputs.clone());
    replay.generated_at = cert.generated_at;
    if replay.graph != cert.graph || replay.quotient != cert.quotient {
        problems.push("graph or quotient names do not match the inputs".into());
    }
    if replay.params != cert.params {
        problems.push(format!("search gives {:?}, certificate has {:?}", replay.params, cert.params));
    }
    if replay.constants != cert.constants {
        problems.push("constants differ from the recomputation".into());
    }
    if replay.checks != cert.checks {
        problems.push("checks differ from the recomputation".into());
    }
    if &replay != cert && problems.is_empty() {
        problems.push("certificate differs from the recomputation".into());
    }
    if cert.status != Status::Certified {
        problems.push(format!("status is {:?}", cert.status));
    }
    let r_final = cert.constants.as_ref().map(|k| k.r_final);
    if !r_final.is_some_and(|r| r < 1.0) {
        problems.push("R_final is not below 1".into());
    }
    VerifyReport {
        ok: problems.is_empty(),
        status: cert.status,
        r_final,
        problems,
    }
}
