use std::fmt;

use super::eta::{
    eta_certificate, square_property_check, SquarePropertyVerdict, DEFAULT_ETA_BUDGET,
};
use super::plane::{
    canonicalize, find_idempotents_2d, find_nilpotents_2d, nilpotent_lines_general,
};
use super::{AnalysisError, Canonical, EtaOutcome, Idempotents, NilpotentDirection};
use crate::algebra::{StructureConstants, SubmulConstant, Table2D, TableFamily};

const SQUARE_PROPERTY_SAMPLES: usize = 1000;

/// Everything [`classify`] learns about an algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub dim: usize,
    pub fingerprint: String,
    pub submul: SubmulConstant,
    pub eta: EtaOutcome,
    pub square_property: SquarePropertyVerdict,
    /// Only computed in dimension 2.
    pub idempotents: Option<Idempotents>,
    pub nilpotents: Vec<NilpotentDirection>,
    pub family: Option<TableFamily>,
    /// Set for Table II algebras.
    pub canonical: Option<Result<Canonical, AnalysisError>>,
}

pub fn classify(sc: &StructureConstants) -> ClassificationReport {
    classify_with_budget(sc, DEFAULT_ETA_BUDGET)
}

/// [`classify`] with an explicit sphere-sampling budget for `η`.
pub fn classify_with_budget(sc: &StructureConstants, budget: u64) -> ClassificationReport {
    let table = Table2D::from_structure_constants(sc);
    let nilpotents = match &table {
        Some(t) if t.family() == TableFamily::General => nilpotent_lines_general(t),
        Some(t) => find_nilpotents_2d(t).expect("idempotent family"),
        None => Vec::new(),
    };
    let canonical = table
        .filter(|t| t.family() == TableFamily::SingleIdempotent)
        .map(|t| canonicalize(&t));
    ClassificationReport {
        dim: sc.dim(),
        fingerprint: sc.fingerprint(),
        submul: sc.weak_submul_constant(),
        eta: eta_certificate(sc, budget),
        square_property: square_property_check(sc, SQUARE_PROPERTY_SAMPLES),
        idempotents: table.as_ref().map(find_idempotents_2d),
        nilpotents,
        family: table.map(|t| t.family()),
        canonical,
    }
}

fn list<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let s: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if s.is_empty() {
        "none".into()
    } else {
        s.join("; ")
    }
}

impl ClassificationReport {
    /// One `key = value` pair per line, stable key order.
    pub fn to_key_values(&self) -> String {
        let mut kv: Vec<(&str, String)> = vec![
            ("dim", self.dim.to_string()),
            ("fingerprint", self.fingerprint.clone()),
            ("M", format!("{:?}", self.submul.value)),
            ("M_degenerate", self.submul.degenerate.to_string()),
        ];
        match &self.eta {
            EtaOutcome::Bound(c) => {
                kv.push(("eta", format!("{:?}", c.eta)));
                kv.push(("eta_method", c.method.to_string()));
                kv.push(("eta_certified", c.is_certified().to_string()));
                kv.push(("eta_sampled_min", format!("{:?}", c.sampled_min)));
                kv.push(("eta_sample_count", c.sample_count.to_string()));
                kv.push(("eta_covering_radius", format!("{:?}", c.covering_radius)));
                kv.push(("eta_lipschitz_bound", format!("{:?}", c.lipschitz_bound)));
                kv.push(("eta_minimizer", c.minimizer.to_string()));
            }
            EtaOutcome::NoSquareInequality { witness } => {
                kv.push(("eta", "0".into()));
                kv.push(("eta_method", "none".into()));
                kv.push(("eta_certified", "false".into()));
                kv.push(("eta_witness", witness.to_string()));
            }
        }
        kv.push(("square_property", self.square_property.holds.to_string()));
        kv.push((
            "square_property_max_defect",
            format!("{:?}", self.square_property.max_defect),
        ));
        kv.push((
            "square_property_samples",
            self.square_property.samples.to_string(),
        ));
        kv.push((
            "family",
            self.family.map_or("none".into(), |f| f.to_string()),
        ));
        match &self.idempotents {
            None => kv.push(("idempotents", "not computed".into())),
            Some(i) => {
                kv.push(("idempotents", list(&i.points)));
                if let Some(line) = &i.line {
                    kv.push((
                        "idempotent_line",
                        format!("{} + t·{}", line.point, line.direction),
                    ));
                }
            }
        }
        kv.push((
            "nilpotents",
            list(self.nilpotents.iter().map(|n| &n.direction)),
        ));
        kv.push((
            "canonical",
            match &self.canonical {
                None => "none".into(),
                Some(Ok(c)) => format!(
                    "{} alpha={:?} beta={:?} A={:?} B={:?}",
                    c.table.family(),
                    c.alpha,
                    c.beta,
                    c.table.a_sum(),
                    c.table.b_sum()
                ),
                Some(Err(e)) => format!("not normalizable ({e})"),
            },
        ));
        kv.into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "algebra of dimension {} [{}]",
            self.dim, self.fingerprint
        )?;
        write!(f, "  product bound M = {}", self.submul.value)?;
        if self.submul.degenerate {
            write!(f, " (zero product)")?;
        }
        writeln!(f)?;
        match &self.eta {
            EtaOutcome::Bound(c) => {
                writeln!(f, "  square inequality: eta = {} via {}", c.eta, c.method)?;
                if !c.is_certified() {
                    writeln!(f, "    (not certified; sampled minimum {})", c.sampled_min)?;
                }
            }
            EtaOutcome::NoSquareInequality { witness } => {
                writeln!(f, "  square inequality: none, {witness}² = 0")?;
            }
        }
        writeln!(
            f,
            "  square property: {} (max defect {:e} over {} samples)",
            if self.square_property.holds {
                "holds"
            } else {
                "fails"
            },
            self.square_property.max_defect,
            self.square_property.samples
        )?;
        if let Some(family) = self.family {
            writeln!(f, "  table family: {family}")?;
        }
        if let Some(i) = &self.idempotents {
            writeln!(f, "  idempotents: {}", list(&i.points))?;
            if let Some(line) = &i.line {
                writeln!(f, "    and the line {} + t·{}", line.point, line.direction)?;
            }
        }
        if self.dim == 2 {
            writeln!(
                f,
                "  nilpotent lines: {}",
                list(self.nilpotents.iter().map(|n| &n.description))
            )?;
        }
        match &self.canonical {
            Some(Ok(c)) => writeln!(
                f,
                "  canonical form: table {} with f2 = {}·e1 + {}·e2",
                c.table.family(),
                c.alpha,
                c.beta
            )?,
            Some(Err(e)) => writeln!(f, "  canonical form: {e}")?,
            None => {}
        }
        Ok(())
    }
}
