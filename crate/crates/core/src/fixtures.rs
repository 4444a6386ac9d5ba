//! Poincaré–Serre data of the spaces of smooth forms `U_{n,d}` and of their
//! moduli `M_{n,d}`, as known from the literature.
//!
//! These are inputs, not computations: for `(n, d)` in
//! `{(2,3), (3,3), (4,3), (2,5)}` the orbit map identifies `H*(U_{n,d})` with
//! `H*(GL_{n+1})`, and `M_{2,4}` has a single extra class `Q(-6)` in degree 6.
//! The checked-in JSON files under `fixtures/` must regenerate bit-identically
//! from [`FixtureSet::generate`].

use std::collections::BTreeMap;
use std::path::Path;

use crate::bigraded::BigradedPolynomial;
use crate::error::Result;
use crate::models::gl_poincare_serre;

/// Instances with moduli of a point's rational cohomology.
pub const POINT_MODULI: [(u32, u32); 4] = [(2, 3), (3, 3), (4, 3), (2, 5)];

pub const MAX_GL: u32 = 8;

pub fn ps_gl_name(k: u32) -> String {
    format!("ps_gl_{k}")
}

pub fn ps_u_name(n: u32, d: u32) -> String {
    format!("ps_u_{n}_{d}")
}

/// `1 + t^6 u^{12}`: `H^6(M_{2,4}; Q) ≅ Q(-6)`.
pub fn ps_m24() -> BigradedPolynomial {
    BigradedPolynomial::one_plus(6, 12)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSet {
    entries: BTreeMap<String, BigradedPolynomial>,
}

const CHECKED_IN: &[(&str, &str)] = &[
    ("ps_gl_1", include_str!("../fixtures/ps_gl_1.json")),
    ("ps_gl_2", include_str!("../fixtures/ps_gl_2.json")),
    ("ps_gl_3", include_str!("../fixtures/ps_gl_3.json")),
    ("ps_gl_4", include_str!("../fixtures/ps_gl_4.json")),
    ("ps_gl_5", include_str!("../fixtures/ps_gl_5.json")),
    ("ps_gl_6", include_str!("../fixtures/ps_gl_6.json")),
    ("ps_gl_7", include_str!("../fixtures/ps_gl_7.json")),
    ("ps_gl_8", include_str!("../fixtures/ps_gl_8.json")),
    ("ps_m24", include_str!("../fixtures/ps_m24.json")),
    ("ps_point", include_str!("../fixtures/ps_point.json")),
    ("ps_u_2_3", include_str!("../fixtures/ps_u_2_3.json")),
    ("ps_u_2_4", include_str!("../fixtures/ps_u_2_4.json")),
    ("ps_u_2_5", include_str!("../fixtures/ps_u_2_5.json")),
    ("ps_u_3_3", include_str!("../fixtures/ps_u_3_3.json")),
    ("ps_u_4_3", include_str!("../fixtures/ps_u_4_3.json")),
];

impl FixtureSet {
    /// Builds every fixture from the cohomology models.
    pub fn generate() -> Self {
        let mut entries = BTreeMap::new();
        for k in 1..=MAX_GL {
            entries.insert(ps_gl_name(k), gl_poincare_serre(k));
        }
        entries.insert("ps_point".into(), BigradedPolynomial::one());
        entries.insert("ps_m24".into(), ps_m24());
        for (n, d) in POINT_MODULI {
            entries.insert(ps_u_name(n, d), gl_poincare_serre(n + 1));
        }
        entries.insert(ps_u_name(2, 4), &gl_poincare_serre(3) * &ps_m24());
        Self { entries }
    }

    /// Parses the JSON files compiled into the crate.
    pub fn checked_in() -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (name, text) in CHECKED_IN {
            entries.insert(name.to_string(), serde_json::from_str(text)?);
        }
        Ok(Self { entries })
    }

    /// Raw text of a checked-in file.
    pub fn checked_in_text(name: &str) -> Option<&'static str> {
        CHECKED_IN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
    }

    pub fn get(&self, name: &str) -> Option<&BigradedPolynomial> {
        self.entries.get(name)
    }

    pub fn ps_gl(&self, k: u32) -> Option<&BigradedPolynomial> {
        self.get(&ps_gl_name(k))
    }

    pub fn ps_u(&self, n: u32, d: u32) -> Option<&BigradedPolynomial> {
        self.get(&ps_u_name(n, d))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigradedPolynomial)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Canonical on-disk text: pretty JSON plus trailing newline.
    pub fn render(poly: &BigradedPolynomial) -> String {
        let mut s = serde_json::to_string_pretty(poly).expect("serializable");
        s.push('\n');
        s
    }

    /// Writes `<name>.json` for every fixture into `dir`.
    pub fn write_all(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, poly) in self.iter() {
            std::fs::write(dir.join(format!("{name}.json")), Self::render(poly))?;
        }
        Ok(())
    }
}
