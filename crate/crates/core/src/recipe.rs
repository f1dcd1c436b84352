//! Construction recipes: the inputs and permutations as plain JSON.
//!
//! ```json
//! {"inputs": [{"graph6": "K?...", "partition": {"a": 2, "codes": [[0, 11], ...]}}],
//!  "pi": [[1, 2, 3, 4, 5, 6]]}
//! ```
//!
//! `pi` lists `π2, ..., πt` as 1-indexed images; it may be omitted when `t = 1`.

use serde::{Deserialize, Serialize};

use crate::codes::CodePartition;
use crate::construction::{ConstructionContext, PermTuple};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeInput {
    pub graph6: String,
    pub partition: CodePartition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub inputs: Vec<RecipeInput>,
    #[serde(default)]
    pub pi: PermTuple,
}

impl Recipe {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("recipe: {e}")))
    }

    pub fn from_context(ctx: &ConstructionContext) -> Self {
        let inputs = ctx
            .inputs()
            .iter()
            .map(|(g, p)| RecipeInput {
                graph6: graph6::encode(g),
                partition: p.clone(),
            })
            .collect();
        Recipe {
            inputs,
            pi: ctx.pi().clone(),
        }
    }

    /// Decodes the graphs, re-validates each partition, and validates the
    /// whole construction.
    pub fn context(&self) -> Result<ConstructionContext> {
        let inputs = self
            .inputs
            .iter()
            .enumerate()
            .map(|(idx, input)| {
                let g: Graph = graph6::decode(&input.graph6)?;
                let p = CodePartition::new(&g, input.partition.codes.clone())?;
                if p.a != input.partition.a {
                    return Err(Error::Validation(format!(
                        "input {}: declared code size {} but codes have size {}",
                        idx + 1,
                        input.partition.a,
                        p.a
                    )));
                }
                Ok((g, p))
            })
            .collect::<Result<_>>()?;
        ConstructionContext::new(inputs, self.pi.clone())
    }
}
