//! Prediction files and epoch logs.
//!
//! Both formats come as comma-separated text with a header row, or as one
//! JSON object per line. A file whose first non-blank character is `{` is
//! read as JSON lines. Errors carry a 1-based line and column; for CSV the
//! column is the field number, for JSON lines the character offset.

use std::collections::BTreeMap;
use std::fmt;

use confauc::{EpochRecord, Label, LabeledDataset, Split};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: u64,
    pub column: u64,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum InputError {
    Parse(ParseError),
    Data(confauc::Error),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(e) => e.fmt(f),
            InputError::Data(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for InputError {}

impl From<ParseError> for InputError {
    fn from(e: ParseError) -> Self {
        InputError::Parse(e)
    }
}

impl From<confauc::Error> for InputError {
    fn from(e: confauc::Error) -> Self {
        InputError::Data(e)
    }
}

fn parse_error(line: u64, column: u64, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// One raw field value and where it came from.
#[derive(Debug)]
struct Field {
    text: String,
    line: u64,
    column: u64,
}

impl Field {
    fn fail(&self, message: String) -> ParseError {
        parse_error(self.line, self.column, message)
    }

    fn label(&self) -> Result<i64, ParseError> {
        self.text
            .parse::<i64>()
            .ok()
            .filter(|&v| Label::from_int(v).is_some())
            .ok_or_else(|| self.fail(format!("label must be 0 or 1, got {:?}", self.text)))
    }

    fn probability(&self) -> Result<f64, ParseError> {
        self.text
            .parse::<f64>()
            .ok()
            .filter(|p| (0.0..=1.0).contains(p))
            .ok_or_else(|| {
                self.fail(format!(
                    "prob must be a number in [0, 1], got {:?}",
                    self.text
                ))
            })
    }

    fn epoch(&self) -> Result<u64, ParseError> {
        self.text.parse::<u64>().map_err(|_| {
            self.fail(format!(
                "epoch must be a non-negative integer, got {:?}",
                self.text
            ))
        })
    }

    fn split(&self) -> Result<Split, ParseError> {
        self.text.parse::<Split>().map_err(|e| self.fail(e))
    }
}

fn is_json_lines(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Rows of the requested columns, in file order.
fn rows(text: &str, columns: &[&str]) -> Result<Vec<Vec<Field>>, ParseError> {
    if is_json_lines(text) {
        json_rows(text, columns)
    } else {
        csv_rows(text, columns)
    }
}

fn csv_position(err: &csv::Error) -> u64 {
    err.position().map_or(1, |p| p.line())
}

fn csv_rows(text: &str, columns: &[&str]) -> Result<Vec<Vec<Field>>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| parse_error(csv_position(&e), 1, e.to_string()))?
        .clone();
    let indices = columns
        .iter()
        .map(|&name| {
            header.iter().position(|h| h == name).ok_or_else(|| {
                parse_error(1, 1, format!("header must contain {:?}", columns.join(",")))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| parse_error(csv_position(&e), 1, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        out.push(
            indices
                .iter()
                .map(|&i| Field {
                    text: record[i].to_string(),
                    line,
                    column: i as u64 + 1,
                })
                .collect(),
        );
    }
    Ok(out)
}

fn json_rows(text: &str, columns: &[&str]) -> Result<Vec<Vec<Field>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i as u64 + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(raw)
            .map_err(|e| parse_error(line, e.column() as u64, e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(parse_error(line, 1, "expected a JSON object"));
        };
        let fields = columns
            .iter()
            .map(|&name| {
                let column = raw
                    .find(&format!("\"{name}\""))
                    .map_or(1, |offset| raw[..offset].chars().count() as u64 + 1);
                let text = match map.get(name) {
                    Some(Value::Number(n)) => n.to_string(),
                    Some(Value::String(s)) => s.clone(),
                    Some(other) => {
                        return Err(parse_error(
                            line,
                            column,
                            format!("{name:?} has unsupported value {other}"),
                        ))
                    }
                    None => return Err(parse_error(line, 1, format!("missing field {name:?}"))),
                };
                Ok(Field { text, line, column })
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(fields);
    }
    Ok(out)
}

pub fn parse_predictions(text: &str) -> Result<LabeledDataset, InputError> {
    let pairs = rows(text, &["label", "prob"])?
        .iter()
        .map(|row| Ok((row[0].label()?, row[1].probability()?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(LabeledDataset::from_pairs(pairs)?)
}

/// Groups rows by `(epoch, split)`; each group keeps file order.
pub fn parse_epoch_log(text: &str) -> Result<Vec<EpochRecord>, InputError> {
    let mut groups: BTreeMap<(u64, Split), Vec<(i64, f64)>> = BTreeMap::new();
    for row in rows(text, &["epoch", "split", "label", "prob"])? {
        let key = (row[0].epoch()?, row[1].split()?);
        groups
            .entry(key)
            .or_default()
            .push((row[2].label()?, row[3].probability()?));
    }
    if groups.is_empty() {
        return Err(confauc::Error::EmptyInput.into());
    }
    groups
        .into_iter()
        .map(|((epoch, split), pairs)| {
            Ok(EpochRecord {
                epoch,
                split,
                dataset: LabeledDataset::from_pairs(pairs)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(r: Result<impl fmt::Debug, InputError>) -> ParseError {
        match r {
            Err(InputError::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn csv_predictions() {
        let d = parse_predictions("label,prob\n1,0.9\n0, 0.25\n").unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.samples()[1].probability(), 0.25);
    }

    #[test]
    fn column_order_and_extra_columns_are_free() {
        let d = parse_predictions("id,prob,label\na,0.9,1\nb,0.1,0\n").unwrap();
        assert_eq!(d.positives(), 1);
    }

    #[test]
    fn header_only_and_blank_files_are_empty() {
        for text in ["label,prob\n", "", "  \n"] {
            assert_eq!(
                parse_predictions(text),
                Err(InputError::Data(confauc::Error::EmptyInput))
            );
        }
    }

    #[test]
    fn bad_values_are_positioned() {
        let e = parse_err(parse_predictions("label,prob\n1,0.9\n2,0.1\n"));
        assert_eq!((e.line, e.column), (3, 1));
        let e = parse_err(parse_predictions("label,prob\n1,0.9\n0,1.5\n"));
        assert_eq!((e.line, e.column), (3, 2));
        let e = parse_err(parse_predictions("label,prob\n1,nan\n"));
        assert_eq!((e.line, e.column), (2, 2));
        let e = parse_err(parse_predictions("label,prob\n1,0.9,3\n"));
        assert_eq!(e.line, 2);
    }

    #[test]
    fn missing_header_column() {
        let e = parse_err(parse_predictions("y,prob\n1,0.5\n"));
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn json_lines_predictions() {
        let d = parse_predictions("{\"label\": 1, \"prob\": 0.75}\n\n{\"label\":0,\"prob\":0}\n")
            .unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.samples()[0].probability(), 0.75);
    }

    #[test]
    fn json_lines_errors_are_positioned() {
        let e = parse_err(parse_predictions(
            "{\"label\":1,\"prob\":0.5}\n{\"label\":1,\"prob\":\n",
        ));
        assert_eq!(e.line, 2);
        let e = parse_err(parse_predictions(
            "{\"label\":1,\"prob\":0.5}\n{\"label\":1, \"prob\":7}\n",
        ));
        assert_eq!((e.line, e.column), (2, 13));
        let e = parse_err(parse_predictions("{\"label\":1}\n"));
        assert_eq!(e.line, 1);
    }

    #[test]
    fn epoch_log_groups_stably() {
        let text = "epoch,split,label,prob\n\
                    1,validation,1,0.8\n\
                    0,validation,0,0.3\n\
                    1,validation,0,0.4\n\
                    0,train,1,0.6\n";
        let log = parse_epoch_log(text).unwrap();
        let keys: Vec<(u64, Split)> = log.iter().map(|r| (r.epoch, r.split)).collect();
        assert_eq!(
            keys,
            [
                (0, Split::Train),
                (0, Split::Validation),
                (1, Split::Validation)
            ]
        );
        let probs: Vec<f64> = log[2]
            .dataset
            .samples()
            .iter()
            .map(|s| s.probability())
            .collect();
        assert_eq!(probs, [0.8, 0.4]);
    }

    #[test]
    fn epoch_log_rejects_unknown_split() {
        let e = parse_err(parse_epoch_log("epoch,split,label,prob\n0,dev,1,0.5\n"));
        assert_eq!((e.line, e.column), (2, 2));
    }

    #[test]
    fn epoch_log_json_lines() {
        let log = parse_epoch_log(
            "{\"epoch\":0,\"split\":\"validation\",\"label\":1,\"prob\":0.9}\n\
             {\"epoch\":0,\"split\":\"validation\",\"label\":0,\"prob\":0.1}\n",
        )
        .unwrap();
        assert_eq!(log.len(), 1);
        assert_eq!(log[0].dataset.n(), 2);
    }

    #[test]
    fn empty_epoch_log() {
        assert_eq!(
            parse_epoch_log("epoch,split,label,prob\n"),
            Err(InputError::Data(confauc::Error::EmptyInput))
        );
    }
}
