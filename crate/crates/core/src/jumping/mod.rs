//! The jumping lines of a configuration, computed from the Steiner pencil and
//! compared with their description through curves with fat points.

pub mod eliminant;
pub mod scan;
pub mod structure;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use eliminant::{inverse3, ninth_point, pencil4_eliminant, random_transform, Eliminant, NinthPoint, Transform};
pub use scan::{
    case_of, elimination_rng, eliminant_verdicts, gamma_points, jumping_scan, point_record, Counts, FatPointTests,
    JumpingReport, PointRecord, ScanOptions,
};
pub use structure::{
    augmented_monoidal, base_locus_equality, containment_monoidal, containment_monoidal_on, length_accounting,
    pinceau_factorization, random_extra_point, BaseLocus, PinceauFactor,
};

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::forms::monoidal_det;
use crate::geom::{default_validation_degrees, random_config_from_rng, PointConfig};

/// A configuration drawn from a seed, redrawn from the same stream until it
/// passes the genericity checks.
#[derive(Debug, Clone)]
pub struct GeneralConfig<F: Field> {
    pub config: PointConfig<F>,
    pub seed: u64,
    pub reseeds: usize,
}

/// Why a configuration is not general enough, if it is not.
pub fn degeneracy<F: Field>(z: &PointConfig<F>, retries: usize, elimination_seed: u64) -> Result<Option<String>> {
    let m = z.len();
    let (n, epsilon) = case_of(m);
    if epsilon == 0 {
        if m >= 5 && monoidal_det(z)?.is_zero(z.field()) {
            return Ok(Some("monoidal determinant vanishes identically".into()));
        }
        return Ok(None);
    }
    if n >= 4 {
        let fat = FatPointTests::new(z)?;
        if z.points().iter().any(|x| fat.dim_at(z.field(), n - 2, x) > 0) {
            return Ok(Some("Γ meets Z".into()));
        }
    }
    if n == 4 {
        let mut rng = elimination_rng(elimination_seed);
        match pencil4_eliminant(z, &mut rng, retries) {
            Ok(_) => {}
            Err(Error::NotSquarefree) => return Ok(Some("eliminant is not squarefree".into())),
            Err(e) if e.is_degenerate_input() => return Ok(Some(e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// The first configuration of the seeded stream that is in linear general
/// position, imposes independent conditions, and passes [`degeneracy`].
pub fn general_config<F: Field>(field: &F, count: usize, seed: u64, retries: usize) -> Result<GeneralConfig<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = default_validation_degrees(count);
    for reseeds in 0..retries {
        let config = random_config_from_rng(field, count, &degrees, retries, &mut rng)?;
        if degeneracy(&config, retries, seed)?.is_none() {
            return Ok(GeneralConfig { config, seed, reseeds });
        }
    }
    Err(Error::RetriesExhausted { what: format!("general configuration of {count} points"), attempts: retries })
}
