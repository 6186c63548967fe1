//! Fixture JSON ingestion.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::RatMatrix;
use crate::numberfield::{NumberField, PrimeRamification, RamificationData};

#[derive(Deserialize)]
struct RawRam {
    p: u64,
    shape: Vec<(u32, u32)>,
    v_different: Vec<u32>,
}

#[derive(Deserialize)]
struct RawFixture {
    label: String,
    poly: Vec<String>,
    integral_basis: Vec<Vec<String>>,
    disc: String,
    totally_real: bool,
    #[serde(default)]
    iso_class: Option<String>,
    #[serde(default)]
    ramification: Option<Vec<RawRam>>,
    #[serde(default)]
    galois: Option<String>,
}

/// A field together with its declared metadata.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub field: NumberField,
    pub ramification: Option<RamificationData>,
    pub declared_disc: BigInt,
    pub totally_real: bool,
    pub iso_class: Option<String>,
    /// Galois group label such as `C3`, when the field is Galois.
    pub galois: Option<String>,
    pub source: Option<PathBuf>,
}

impl Fixture {
    pub fn label(&self) -> &str {
        self.field.label()
    }

    /// Prime `l` when the fixture is declared cyclic of prime degree.
    pub fn cyclic_prime_degree(&self) -> Option<u64> {
        let g = self.galois.as_deref()?.strip_prefix('C')?;
        let l: u64 = g.parse().ok()?;
        (l as usize == self.field.degree() && crate::exact::arith::is_prime_u64(l)).then_some(l)
    }

    pub fn from_json(text: &str, source: &str) -> Result<Fixture> {
        let err = |msg: String| Error::Fixture { file: source.to_string(), msg };
        let raw: RawFixture = serde_json::from_str(text)
            .map_err(|e| err(format!("line {}: {}", e.line(), e)))?;
        let poly = raw
            .poly
            .iter()
            .map(|c| BigInt::from_str(c.trim()).map_err(|_| err(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let rows = raw
            .integral_basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        BigRational::from_str(x.trim()).map_err(|_| err(format!("bad rational {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = RatMatrix::from_rows(rows).map_err(|e| err(e.to_string()))?;
        let field = NumberField::from_spec(&poly, &basis, &raw.label).map_err(|e| err(e.to_string()))?;
        let declared_disc =
            BigInt::from_str(raw.disc.trim()).map_err(|_| err(format!("bad disc {:?}", raw.disc)))?;
        if field.disc() != &declared_disc {
            return Err(err(format!(
                "trace Gram determinant {} differs from declared disc {}",
                field.disc(),
                declared_disc
            )));
        }
        if field.is_totally_real() != raw.totally_real {
            return Err(err("declared totally_real disagrees with the Sturm count".into()));
        }
        let ramification = raw.ramification.map(|v| RamificationData {
            primes: v
                .into_iter()
                .map(|r| PrimeRamification { p: r.p, shape: r.shape, v_different: r.v_different })
                .collect(),
        });
        if let Some(r) = &ramification {
            r.validate(field.degree()).map_err(|e| err(e.to_string()))?;
        }
        Ok(Fixture {
            field,
            ramification,
            declared_disc,
            totally_real: raw.totally_real,
            iso_class: raw.iso_class,
            galois: raw.galois,
            source: None,
        })
    }

    pub fn from_path(path: &Path) -> Result<Fixture> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture { file: name.clone(), msg: e.to_string() })?;
        let mut f = Fixture::from_json(&text, &name)?;
        f.source = Some(path.to_path_buf());
        Ok(f)
    }
}

#[derive(Clone, Debug, Default)]
pub struct FixtureStore {
    pub dir: PathBuf,
    fixtures: BTreeMap<String, Fixture>,
}

impl FixtureStore {
    /// Loads every `*.json` file directly inside `dir`.
    pub fn load_dir(dir: &Path) -> Result<FixtureStore> {
        let io = |e: std::io::Error| Error::Fixture { file: dir.display().to_string(), msg: e.to_string() };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut store = FixtureStore { dir: dir.to_path_buf(), fixtures: BTreeMap::new() };
        for p in paths {
            store.insert(Fixture::from_path(&p)?)?;
        }
        Ok(store)
    }

    pub fn from_fixtures(list: Vec<Fixture>) -> Result<FixtureStore> {
        let mut store = FixtureStore::default();
        for f in list {
            store.insert(f)?;
        }
        Ok(store)
    }

    fn insert(&mut self, f: Fixture) -> Result<()> {
        let label = f.label().to_string();
        if self.fixtures.contains_key(&label) {
            let file = f.source.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
            return Err(Error::Fixture { file, msg: format!("duplicate label {label}") });
        }
        self.fixtures.insert(label, f);
        Ok(())
    }

    pub fn get(&self, label: &str) -> Result<&Fixture> {
        self.fixtures.get(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Fixtures in label order.
    pub fn iter(&self) -> impl Iterator<Item = &Fixture> {
        self.fixtures.values()
    }

    pub fn len(&self) -> usize {
        self.fixtures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixtures.is_empty()
    }
}
