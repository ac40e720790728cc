//! On-disk formats: link files (an embedding, diagram or twisted diagram plus
//! named components) and synthetic linking specs.

use std::collections::BTreeMap;

use linkforge::constructions::{FillRule, LinkingProvider, SyntheticProvider};
use linkforge::cycles::{CycleSteps, OrientedCycle};
use linkforge::diagram::{Diagram, TwistedDiagram};
use linkforge::geometry::{generic_direction, AbstractGraph, PLEmbedding, ProjectionDirection};
use linkforge::io::{embedding_from_json, embedding_to_json};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LinkFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<[i64; 3]>,
    /// Diagram in the diagram module's JSON schema, for inputs without an
    /// embedding.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisted: Option<Value>,
    #[serde(default)]
    pub components: Vec<CycleSteps>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub roles: BTreeMap<String, Vec<usize>>,
}

impl LinkFile {
    pub fn from_embedding(
        emb: &PLEmbedding,
        dir: ProjectionDirection,
        components: &[OrientedCycle],
    ) -> Self {
        LinkFile {
            embedding: Some(embedding_to_json(emb)),
            direction: Some(dir.vector()),
            components: components
                .iter()
                .map(|c| CycleSteps(c.steps().to_vec()))
                .collect(),
            ..Default::default()
        }
    }

    pub fn embedding(&self) -> Result<Option<(PLEmbedding, ProjectionDirection)>, CliError> {
        let Some(v) = &self.embedding else {
            return Ok(None);
        };
        let emb = embedding_from_json(v)?;
        let dir = match self.direction {
            Some([x, y, z]) => ProjectionDirection::new(x, y, z)?,
            None => generic_direction(&emb, 0)?,
        };
        Ok(Some((emb, dir)))
    }

    pub fn twisted(&self) -> Result<Option<TwistedDiagram>, CliError> {
        self.twisted
            .as_ref()
            .map(TwistedDiagram::from_json)
            .transpose()
            .map_err(Into::into)
    }

    /// The diagram, preferring an explicit one, then a twisted diagram's base,
    /// then a projection of the embedding.
    pub fn diagram(&self) -> Result<Diagram, CliError> {
        if let Some(v) = &self.diagram {
            return Ok(Diagram::from_json(v)?);
        }
        if let Some(td) = self.twisted()? {
            return Ok(td.base);
        }
        match self.embedding()? {
            Some((emb, dir)) => Ok(Diagram::project(&emb, dir)?),
            None => Err(CliError::Usage(
                "input has no embedding, diagram or twisted diagram".into(),
            )),
        }
    }

    pub fn cycles(&self, g: &AbstractGraph) -> Result<Vec<OrientedCycle>, CliError> {
        self.components
            .iter()
            .map(|c| c.clone().resolve(g).map_err(Into::into))
            .collect()
    }
}

/// Synthetic link: one triangle per component, linking numbers given by
/// exactly one of `matrix`, `pairs` or `uniform`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub components: usize,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub pairs: Option<Vec<(usize, usize, i64)>>,
    #[serde(default)]
    pub uniform: Option<i64>,
    #[serde(default = "zero_fill")]
    pub fill: FillRule,
    #[serde(default)]
    pub roles: BTreeMap<String, Vec<usize>>,
}

fn zero_fill() -> FillRule {
    FillRule::Zero
}

impl SyntheticSpec {
    pub fn build(&self) -> Result<(LinkingProvider, Vec<OrientedCycle>), CliError> {
        let given = [
            self.matrix.is_some(),
            self.pairs.is_some(),
            self.uniform.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(CliError::Usage(
                "synthetic spec needs exactly one of matrix, pairs, uniform".into(),
            ));
        }
        let (sp, cycles) = if let Some(m) = &self.matrix {
            if m.len() != self.components {
                return Err(CliError::Usage(format!(
                    "matrix has {} rows for {} components",
                    m.len(),
                    self.components
                )));
            }
            SyntheticProvider::from_matrix(m, self.fill.clone())?
        } else if let Some(p) = &self.pairs {
            SyntheticProvider::from_pairs(self.components, p, self.fill.clone())?
        } else {
            SyntheticProvider::uniform(
                self.components,
                self.uniform.unwrap_or(0),
                self.fill.clone(),
            )?
        };
        Ok((LinkingProvider::Synthetic(sp), cycles))
    }
}
