//! Machine-readable checker verdicts with counterexample witnesses.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

/// One violated law together with the element tuple witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<usize>,
}

/// Verdict of a structural check. `verdict` is true iff `violations` is
/// empty; `notes` carries informational findings that are not violations
/// (candidate lists, convention variants); `checked` counts evaluated
/// instances.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    pub checked: u64,
}

impl StructureReport {
    pub fn new() -> Self {
        StructureReport::default()
    }

    pub fn verdict(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, law: impl Into<String>, witness: &[usize]) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.to_vec(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    #[inline]
    pub fn tick(&mut self) {
        self.checked += 1;
    }

    pub fn law_violated(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    /// Fold `other` in, prefixing its law names.
    pub fn absorb(&mut self, prefix: &str, other: StructureReport) {
        for v in other.violations {
            self.violations.push(Violation {
                law: if prefix.is_empty() {
                    v.law
                } else {
                    format!("{prefix}.{}", v.law)
                },
                witness: v.witness,
            });
        }
        for n in other.notes {
            if prefix.is_empty() {
                self.notes.push(n);
            } else {
                self.notes.push(format!("{prefix}: {n}"));
            }
        }
        self.checked += other.checked;
    }

    /// Deterministic presentation: violations sorted by (law, witness).
    pub fn sorted(mut self) -> Self {
        self.violations
            .sort_by(|a, b| (&a.law, &a.witness).cmp(&(&b.law, &b.witness)));
        self
    }
}

impl Serialize for StructureReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StructureReport", 4)?;
        s.serialize_field("verdict", &self.verdict())?;
        s.serialize_field("violations", &self.violations)?;
        s.serialize_field("notes", &self.notes)?;
        s.serialize_field("checked", &self.checked)?;
        s.end()
    }
}

impl std::fmt::Display for StructureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.verdict() {
            writeln!(f, "verdict: true ({} instances checked)", self.checked)?;
        } else {
            writeln!(
                f,
                "verdict: false ({} violations, {} instances checked)",
                self.violations.len(),
                self.checked
            )?;
            for v in &self.violations {
                writeln!(f, "  {} violated at {:?}", v.law, v.witness)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_iff_no_violations() {
        let mut r = StructureReport::new();
        assert!(r.verdict());
        r.note("informational only");
        assert!(r.verdict());
        r.violate("S3", &[1, 1]);
        assert!(!r.verdict());
        assert!(r.law_violated("S3"));
    }

    #[test]
    fn absorb_prefixes_laws() {
        let mut inner = StructureReport::new();
        inner.violate("pentagon", &[0, 1, 2, 3]);
        let mut outer = StructureReport::new();
        outer.absorb("monoidal", inner);
        assert!(outer.law_violated("monoidal.pentagon"));
    }

    #[test]
    fn json_includes_verdict() {
        let r = StructureReport::new();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], serde_json::json!(true));
    }
}
