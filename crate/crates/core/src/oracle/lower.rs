use super::cells::CellModel;
use super::complex::homology_znf;
use super::quotient::{e2_model, mapping_torus, twisted_power, CyclicAction};
use crate::engine::Model;
use crate::error::{Error, Result};
use crate::graded::GradedAb;
use crate::knot::SymmetryData;

/// Number of cells of the lowered model, or `None` when it cannot be lowered.
pub fn model_cell_count(model: &Model) -> Option<usize> {
    match model {
        Model::Point => Some(1),
        Model::Circle => Some(2),
        Model::Product { factors } => factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(model_cell_count(f)?)),
        Model::EPiece { n: 2, children } => match children.as_slice() {
            [(x, 2)] => model_cell_count(x)?.checked_pow(2)?.checked_mul(2),
            [(a, 1), (b, 1)] => model_cell_count(a)?
                .checked_mul(model_cell_count(b)?)?
                .checked_mul(2),
            _ => None,
        },
        Model::CyclicTwist { factors, .. } => factors
            .iter()
            .try_fold(2usize, |acc, f| acc.checked_mul(model_cell_count(f)?)),
        Model::EPiece { .. } | Model::Opaque { .. } => None,
    }
}

/// Cellular chains of a model, refusing models larger than `budget` cells.
pub fn lower_model(model: &Model, budget: usize) -> Result<CellModel> {
    match model_cell_count(model) {
        None => Err(Error::NotEvaluable(format!("no cell model for {model}"))),
        Some(cells) if cells > budget => Err(Error::CellBudgetExceeded { cells, budget }),
        Some(_) => lower(model),
    }
}

fn lower(model: &Model) -> Result<CellModel> {
    match model {
        Model::Point => Ok(CellModel::point()),
        Model::Circle => Ok(CellModel::minimal_circle()),
        Model::Product { factors } => {
            let parts = factors.iter().map(lower).collect::<Result<Vec<_>>>()?;
            Ok(CellModel::product_all(&parts))
        }
        Model::EPiece { n: 2, children } => match children.as_slice() {
            [(x, 2)] => Ok(e2_model(&lower(x)?)),
            [(a, 1), (b, 1)] => Ok(CellModel::product_all([
                &CellModel::minimal_circle().without_actions(),
                &lower(a)?,
                &lower(b)?,
            ])
            .without_actions()),
            _ => Err(Error::NotEvaluable(format!("no cell model for {model}"))),
        },
        Model::CyclicTwist {
            order,
            factors,
            perm,
            reversed,
        } => {
            let parts = factors.iter().map(lower).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&CellModel> = parts.iter().collect();
            let mut twists = vec![None; parts.len()];
            let orbits = SymmetryData {
                order: *order,
                perm: perm.clone(),
                reversals: reversed.clone(),
            }
            .orbits();
            for orbit in orbits {
                let first = orbit[0];
                if reversed.get(first).copied().unwrap_or(false) {
                    let inv = parts[first].involution().ok_or_else(|| {
                        Error::NotEvaluable(format!("no inversion on {}", factors[first]))
                    })?;
                    twists[first] = Some(inv);
                }
            }
            let (product, generator) = twisted_power(&refs, perm, &twists)?;
            let action = CyclicAction::new(product, generator, *order)?;
            Ok(mapping_torus(&action.model, &action.generator))
        }
        Model::EPiece { .. } | Model::Opaque { .. } => {
            Err(Error::NotEvaluable(format!("no cell model for {model}")))
        }
    }
}

/// Integral homology of a model through its cell model.
pub fn oracle_homology(model: &Model, budget: usize) -> Result<GradedAb> {
    homology_znf(&lower_model(model, budget)?.to_complex())
}
