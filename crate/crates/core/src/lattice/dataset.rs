//! Line-oriented group dataset files.
//!
//! ```text
//! # comment
//! group <label>
//! degree <n>
//! order <m>                 (optional)
//! primitive true|false      (optional)
//! gen <cycle notation>      (zero or more)
//! end
//! ```
//!
//! Keywords are case-sensitive and separated from their argument by
//! whitespace. A `#` starts a comment only at the beginning of a line
//! (after optional whitespace), since labels may contain it. `degree` must
//! precede every `gen` line of its entry.

use std::path::Path;

use serde::Serialize;

use super::LatticeError;
use crate::perm::{group_closure, is_primitive, Permutation, PermutationGroup, DEFAULT_ORDER_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDatasetEntry {
    pub label: String,
    pub degree: usize,
    pub generator_strings: Vec<String>,
    pub claimed_order: Option<usize>,
    pub claimed_primitive: Option<bool>,
    /// Line of the `group` keyword.
    pub line: usize,
}

struct Partial {
    label: String,
    line: usize,
    degree: Option<usize>,
    generators: Vec<String>,
    order: Option<usize>,
    primitive: Option<bool>,
}

fn parse_error(line: usize, message: impl Into<String>) -> LatticeError {
    LatticeError::Parse { line, message: message.into() }
}

/// Parses dataset text into entries without closing any group.
pub fn parse_entries(text: &str) -> Result<Vec<GroupDatasetEntry>, LatticeError> {
    let mut entries = Vec::new();
    let mut current: Option<Partial> = None;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (keyword, argument) = match trimmed.split_once(char::is_whitespace) {
            Some((k, a)) => (k, a.trim()),
            None => (trimmed, ""),
        };
        match (keyword, current.as_mut()) {
            ("group", None) => {
                if argument.is_empty() {
                    return Err(parse_error(line, "group needs a label"));
                }
                current = Some(Partial {
                    label: argument.to_string(),
                    line,
                    degree: None,
                    generators: Vec::new(),
                    order: None,
                    primitive: None,
                });
            }
            ("group", Some(open)) => {
                return Err(parse_error(
                    line,
                    format!("group {:?} opened before {:?} was closed", argument, open.label),
                ));
            }
            ("end", Some(_)) => {
                if !argument.is_empty() {
                    return Err(parse_error(line, "end takes no argument"));
                }
                let done = current.take().expect("open entry");
                let degree =
                    done.degree.ok_or_else(|| parse_error(line, format!("group {:?} has no degree", done.label)))?;
                entries.push(GroupDatasetEntry {
                    label: done.label,
                    degree,
                    generator_strings: done.generators,
                    claimed_order: done.order,
                    claimed_primitive: done.primitive,
                    line: done.line,
                });
            }
            ("degree", Some(open)) => {
                if open.degree.is_some() {
                    return Err(parse_error(line, "degree given twice"));
                }
                open.degree = Some(parse_number(argument, line)?);
            }
            ("order", Some(open)) => {
                if open.order.is_some() {
                    return Err(parse_error(line, "order given twice"));
                }
                open.order = Some(parse_number(argument, line)?);
            }
            ("primitive", Some(open)) => {
                if open.primitive.is_some() {
                    return Err(parse_error(line, "primitive given twice"));
                }
                open.primitive = Some(match argument {
                    "true" => true,
                    "false" => false,
                    other => return Err(parse_error(line, format!("expected true or false, found {other:?}"))),
                });
            }
            ("gen", Some(open)) => {
                let Some(degree) = open.degree else {
                    return Err(parse_error(line, "gen before degree"));
                };
                Permutation::parse_cycles(argument, degree).map_err(|e| parse_error(line, e.to_string()))?;
                open.generators.push(argument.to_string());
            }
            ("end" | "degree" | "order" | "primitive" | "gen", None) => {
                return Err(parse_error(line, format!("{keyword} outside a group block")));
            }
            (other, _) => return Err(parse_error(line, format!("unknown keyword {other:?}"))),
        }
    }
    if let Some(open) = current {
        return Err(parse_error(open.line, format!("group {:?} is missing end", open.label)));
    }
    Ok(entries)
}

fn parse_number(argument: &str, line: usize) -> Result<usize, LatticeError> {
    argument.parse().map_err(|_| parse_error(line, format!("expected a natural number, found {argument:?}")))
}

/// Closes the entry's generators and checks every claim the entry makes.
pub fn validate_entry(entry: &GroupDatasetEntry) -> Result<PermutationGroup, LatticeError> {
    let wrap = |source| LatticeError::Group { label: entry.label.clone(), source };
    let generators = entry
        .generator_strings
        .iter()
        .map(|g| Permutation::parse_cycles(g, entry.degree))
        .collect::<Result<Vec<_>, _>>()
        .map_err(wrap)?;
    let group = group_closure(entry.degree, &generators, DEFAULT_ORDER_CAP).map_err(wrap)?;
    if let Some(claimed) = entry.claimed_order {
        if claimed != group.order() {
            return Err(LatticeError::OrderMismatch { label: entry.label.clone(), claimed, actual: group.order() });
        }
    }
    if let Some(claimed) = entry.claimed_primitive {
        let actual = is_primitive(&group);
        if claimed != actual {
            return Err(LatticeError::PrimitivityMismatch { label: entry.label.clone(), claimed, actual });
        }
    }
    Ok(group)
}

/// Parses and validates dataset text.
pub fn parse_group_dataset(text: &str) -> Result<Vec<(GroupDatasetEntry, PermutationGroup)>, LatticeError> {
    parse_entries(text)?
        .into_iter()
        .map(|entry| {
            let group = validate_entry(&entry)?;
            Ok((entry, group))
        })
        .collect()
}

/// Reads, parses and validates a dataset file.
pub fn ingest_group_file(path: impl AsRef<Path>) -> Result<Vec<(GroupDatasetEntry, PermutationGroup)>, LatticeError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| LatticeError::Io { path: path.display().to_string(), source })?;
    parse_group_dataset(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PSL27: &str = "\
# PSL(2,7) acting on the projective line over F_7
group PSL(2,7)
degree 8
order 168
primitive true
gen (1,2,3,4,5,6,7)
gen (1,8)(2,7)(3,4)(5,6)
end
";

    #[test]
    fn psl27_on_eight_points() {
        let parsed = parse_group_dataset(PSL27).unwrap();
        assert_eq!(parsed.len(), 1);
        let (entry, group) = &parsed[0];
        assert_eq!(entry.label, "PSL(2,7)");
        assert_eq!(entry.line, 2);
        assert_eq!(group.order(), 168);
        assert!(is_primitive(group));
    }

    #[test]
    fn empty_and_comment_only_inputs() {
        assert!(parse_group_dataset("").unwrap().is_empty());
        assert!(parse_group_dataset("# nothing\n\n   \n").unwrap().is_empty());
    }

    #[test]
    fn order_mismatch_names_the_entry() {
        let text = PSL27.replace("order 168", "order 336");
        match parse_group_dataset(&text) {
            Err(LatticeError::OrderMismatch { label, claimed: 336, actual: 168 }) => assert_eq!(label, "PSL(2,7)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn primitivity_claim_is_checked() {
        let text = "group D4\ndegree 4\nprimitive true\ngen (1234)\ngen (13)\nend\n";
        assert!(matches!(parse_group_dataset(text), Err(LatticeError::PrimitivityMismatch { claimed: true, .. })));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("group A\ndegree 3\ngen (14)\nend\n", 3),
            ("group A\ngen (12)\nend\n", 2),
            ("degree 3\n", 1),
            ("group A\ndegree x\nend\n", 2),
            ("group A\ndegree 3\n", 1),
            ("group A\nend\n", 2),
            ("group A\ndegree 3\nfoo 1\nend\n", 3),
            ("group A\ngroup B\n", 2),
        ];
        for (text, expected) in cases {
            match parse_entries(text) {
                Err(LatticeError::Parse { line, .. }) => assert_eq!(line, expected, "{text:?}"),
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn entry_without_generators_is_trivial() {
        let parsed = parse_group_dataset("group one\ndegree 5\nend\n").unwrap();
        assert_eq!(parsed[0].1.order(), 1);
    }
}
