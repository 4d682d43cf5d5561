use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::cone::Cone;
use super::fan::{DivisorLabel, Fan};
use super::vector::LatticeVector;
use crate::error::{Error, Result};

/// Serialized form of a [`Fan`]. Cones refer to rays by index; label
/// arguments are 1-based factor numbers or blow-up steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
    pub labels: BTreeMap<String, LabelJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub kind: String,
    pub arg: usize,
}

impl From<DivisorLabel> for LabelJson {
    fn from(l: DivisorLabel) -> Self {
        let (kind, arg) = match l {
            DivisorLabel::Boundary(i) => ("boundary", i + 1),
            DivisorLabel::Exceptional(s) => ("exceptional", s),
            DivisorLabel::StrictTransform(i) => ("strict_transform", i + 1),
        };
        LabelJson {
            kind: kind.into(),
            arg,
        }
    }
}

impl TryFrom<&LabelJson> for DivisorLabel {
    type Error = Error;

    fn try_from(l: &LabelJson) -> Result<Self> {
        if l.arg == 0 {
            return Err(Error::MalformedFan("label arguments are 1-based".into()));
        }
        match l.kind.as_str() {
            "boundary" => Ok(DivisorLabel::Boundary(l.arg - 1)),
            "exceptional" => Ok(DivisorLabel::Exceptional(l.arg)),
            "strict_transform" => Ok(DivisorLabel::StrictTransform(l.arg - 1)),
            other => Err(Error::MalformedFan(format!("unknown label kind {other:?}"))),
        }
    }
}

impl From<&Fan> for FanJson {
    fn from(fan: &Fan) -> Self {
        let rays = fan.rays();
        let index = |r: &LatticeVector| rays.binary_search(r).expect("ray of the fan");
        let cones = fan
            .max_cones()
            .iter()
            .map(|c| c.rays().iter().map(index).collect())
            .collect();
        let labels = fan
            .labels()
            .iter()
            .map(|(r, l)| (index(r).to_string(), LabelJson::from(*l)))
            .collect();
        FanJson {
            rank: fan.rank(),
            rays: rays.iter().map(|r| r.coords().to_vec()).collect(),
            cones,
            labels,
        }
    }
}

impl TryFrom<&FanJson> for Fan {
    type Error = Error;

    fn try_from(j: &FanJson) -> Result<Self> {
        let rays: Vec<LatticeVector> = j.rays.iter().cloned().map(LatticeVector::new).collect();
        let ray = |i: usize| {
            rays.get(i)
                .cloned()
                .ok_or_else(|| Error::MalformedFan(format!("ray index {i} out of range")))
        };
        let cones = j
            .cones
            .iter()
            .map(|c| Cone::new(j.rank, c.iter().map(|&i| ray(i)).collect::<Result<Vec<_>>>()?))
            .collect::<Result<Vec<_>>>()?;
        let labels = j
            .labels
            .iter()
            .map(|(k, l)| {
                let i: usize = k
                    .parse()
                    .map_err(|_| Error::MalformedFan(format!("bad ray index {k:?}")))?;
                Ok((ray(i)?, DivisorLabel::try_from(l)?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Fan::new(j.rank, cones, labels)
    }
}

impl Fan {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FanJson::from(self)).expect("fan serializes")
    }

    pub fn from_json(s: &str) -> Result<Fan> {
        let j: FanJson = serde_json::from_str(s).map_err(|e| Error::MalformedFan(e.to_string()))?;
        Fan::try_from(&j)
    }
}
