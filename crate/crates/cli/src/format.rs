//! On-disk inputs: presentation files (JSON) and braid files (TOML).

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use burnside_core::{BraidWord, GroupWord, Presentation};
use serde::{Deserialize, Serialize};

/// `{"generators": m, "relators": [[1, -2, ...], ...]}`; letters are signed
/// generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl PresentationFile {
    pub fn from_presentation(pr: &Presentation) -> Self {
        Self {
            name: None,
            generators: pr.generators(),
            relators: pr.relators().iter().map(|r| r.letters().to_vec()).collect(),
        }
    }

    /// Pretty JSON with one relator per line.
    pub fn to_json_pretty(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            out.push_str(&format!(
                "  \"name\": {},\n",
                serde_json::Value::from(name.as_str())
            ));
        }
        out.push_str(&format!(
            "  \"generators\": {},\n  \"relators\": [",
            self.generators
        ));
        for (i, r) in self.relators.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&serde_json::to_string(r).expect("integer lists serialize"));
        }
        out.push_str(if self.relators.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        out
    }

    /// Reduces every relator and checks indices against `generators`.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let relators = self
            .relators
            .iter()
            .enumerate()
            .map(|(i, r)| {
                GroupWord::from_letters(r.iter().copied())
                    .with_context(|| format!("relator {}", i + 1))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation::new(self.generators, relators)?)
    }
}

pub fn load_presentation(path: &Path) -> Result<Presentation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: PresentationFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.to_presentation()
        .with_context(|| format!("invalid presentation in {}", path.display()))
}

/// ```toml
/// strands = 5
/// word = "(1 2 3 4)^10"
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidFile {
    pub strands: usize,
    pub word: String,
}

pub fn load_braid(path: &Path) -> Result<BraidWord> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: BraidFile =
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    BraidWord::parse(&file.word, file.strands)
        .with_context(|| format!("invalid braid in {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_file_round_trip() {
        let json = r#"{"generators": 2, "relators": [[1, -2, 2, 1], [1, -1]]}"#;
        let file: PresentationFile = serde_json::from_str(json).unwrap();
        let pr = file.to_presentation().unwrap();
        assert_eq!(pr.relators().len(), 1);
        assert_eq!(pr.relators()[0].letters(), [1, 1]);
        let back = PresentationFile::from_presentation(&pr);
        assert_eq!(
            serde_json::to_string(&back).unwrap(),
            r#"{"generators":2,"relators":[[1,1]]}"#
        );
    }

    #[test]
    fn presentation_file_errors() {
        let zero: PresentationFile =
            serde_json::from_str(r#"{"generators": 2, "relators": [[1, 0]]}"#).unwrap();
        assert!(zero.to_presentation().is_err());
        let range: PresentationFile =
            serde_json::from_str(r#"{"generators": 2, "relators": [[3]]}"#).unwrap();
        let err = range.to_presentation().unwrap_err();
        assert!(err.to_string().contains("x3"), "{err}");
    }

    #[test]
    fn braid_file() {
        let file: BraidFile = toml::from_str("strands = 3\nword = \"(1 -2)^2\"").unwrap();
        assert_eq!(file.strands, 3);
        assert_eq!(
            BraidWord::parse(&file.word, file.strands)
                .unwrap()
                .letters()
                .len(),
            4
        );
    }
}
