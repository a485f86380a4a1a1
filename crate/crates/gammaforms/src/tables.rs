//! The worked examples, recomputed and compared with stored values.

use std::collections::BTreeSet;

use gammaforms_core::arith::is_prime_u64;
use gammaforms_core::forms::{Discriminant, Form, GammaLevel};
use gammaforms_core::genus::{find_representations, genus_table};
use gammaforms_core::reduction::enumerate_reduced;
use gammaforms_core::Result;
use num_bigint::BigInt;

pub struct Table {
    pub name: &'static str,
    pub title: &'static str,
    compute: fn() -> Result<Vec<String>>,
    expected: &'static [&'static str],
}

pub struct TableResult {
    pub name: &'static str,
    pub title: &'static str,
    pub got: Vec<String>,
    pub expected: Vec<String>,
}

impl TableResult {
    pub fn matches(&self) -> bool {
        self.got == self.expected
    }
}

impl Table {
    pub fn run(&self) -> Result<TableResult> {
        let mut expected: Vec<String> = self.expected.iter().map(|s| s.to_string()).collect();
        expected.sort();
        let mut got = (self.compute)()?;
        got.sort();
        Ok(TableResult { name: self.name, title: self.title, got, expected })
    }
}

fn rf2(d: i64) -> Result<Vec<String>> {
    let forms = enumerate_reduced(&Discriminant::new(d)?, GammaLevel::new(2)?)?;
    Ok(forms.iter().map(Form::polynomial).collect())
}

fn minus_28() -> Result<gammaforms_core::genus::GenusTable> {
    genus_table(&Discriminant::new(-28)?, GammaLevel::new(2)?)
}

fn ker_28() -> Result<Vec<String>> {
    Ok(minus_28()?.ker_chi.iter().map(ToString::to_string).collect())
}

fn genus_values(q: Form) -> Result<Vec<String>> {
    let t = minus_28()?;
    let i = t
        .assignment
        .iter()
        .find(|(f, _)| *f == q)
        .map(|(_, i)| *i)
        .ok_or_else(|| gammaforms_core::Error::Invariant(format!("{q} has no genus")))?;
    Ok(t.cosets[i].iter().map(ToString::to_string).collect())
}

fn values_principal() -> Result<Vec<String>> {
    genus_values(Form::new(1, 0, 7))
}

fn values_other() -> Result<Vec<String>> {
    genus_values(Form::new(7, 0, 1))
}

// p ≡ 1, 9, 25 (mod 28) iff p is 2-represented by x² + 7y², and
// p ≡ 11, 15, 23 iff by 7x² + y², for primes p < 1000 with (p, 14) = 1.
fn primes_28() -> Result<Vec<String>> {
    let level = GammaLevel::new(2)?;
    let forms = [Form::new(1, 0, 7), Form::new(7, 0, 1)];
    let mut seen: [BTreeSet<u64>; 2] = Default::default();
    for p in (3..1000u64).filter(|&p| p != 7 && is_prime_u64(p)) {
        for (i, q) in forms.iter().enumerate() {
            if find_representations(q, &BigInt::from(p), level)?.iter().any(|r| r.admissible) {
                seen[i].insert(p % 28);
            }
        }
    }
    Ok(seen
        .iter()
        .zip(forms.iter())
        .map(|(s, q)| {
            let r: Vec<String> = s.iter().map(ToString::to_string).collect();
            format!("{}: {}", q.polynomial(), r.join(" "))
        })
        .collect())
}

pub const TABLES: [Table; 8] = [
    Table { name: "rf2-3", title: "Γ₀(2)-RF(−3)", compute: || rf2(-3), expected: &["x^2 + xy + y^2"] },
    Table { name: "rf2-4", title: "Γ₀(2)-RF(−4)", compute: || rf2(-4), expected: &["x^2 + y^2", "2x^2 + 2xy + y^2"] },
    Table {
        name: "rf2-7",
        title: "Γ₀(2)-RF(−7)",
        compute: || rf2(-7),
        expected: &["x^2 + xy + 2y^2", "2x^2 + xy + y^2", "2x^2 - xy + y^2"],
    },
    Table {
        name: "rf2-8",
        title: "Γ₀(2)-RF(−8)",
        compute: || rf2(-8),
        expected: &["x^2 + 2y^2", "2x^2 + y^2", "3x^2 + 2xy + y^2"],
    },
    Table { name: "ker28", title: "ker(χ) for D = −28", compute: ker_28, expected: &["1", "9", "11", "15", "23", "25"] },
    Table {
        name: "genus28-principal",
        title: "units mod 28 2-represented by x² + 7y²",
        compute: values_principal,
        expected: &["1", "9", "25"],
    },
    Table {
        name: "genus28-other",
        title: "units mod 28 2-represented by 7x² + y²",
        compute: values_other,
        expected: &["11", "15", "23"],
    },
    Table {
        name: "primes28",
        title: "residues mod 28 of primes 2-represented by each form",
        compute: primes_28,
        expected: &["x^2 + 7y^2: 1 9 25", "7x^2 + y^2: 11 15 23"],
    },
];

pub fn find(name: &str) -> Option<&'static Table> {
    TABLES.iter().find(|t| t.name == name)
}
