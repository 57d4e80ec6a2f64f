//! Attribute data types: an ISO-SQL-subset of scalars plus the
//! `MAP`/`LIST`/`SET`/`ORDER` container types.

use std::fmt;

/// A parsed attribute data type.
///
/// Container element types are parsed recursively; map keys must be
/// scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DataType {
    Int,
    UInt,
    Float,
    Double,
    Bool,
    String,
    DateTime,
    Varchar(u32),
    Map(Box<DataType>, Box<DataType>),
    List(Box<DataType>),
    Set(Box<DataType>),
    Order(Box<DataType>),
}

impl DataType {
    pub fn is_scalar(&self) -> bool {
        !matches!(
            self,
            DataType::Map(..) | DataType::List(_) | DataType::Set(_) | DataType::Order(_)
        )
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataType::Int => f.write_str("INT"),
            DataType::UInt => f.write_str("UINT"),
            DataType::Float => f.write_str("FLOAT"),
            DataType::Double => f.write_str("DOUBLE"),
            DataType::Bool => f.write_str("BOOL"),
            DataType::String => f.write_str("STRING"),
            DataType::DateTime => f.write_str("DATETIME"),
            DataType::Varchar(n) => write!(f, "VARCHAR({})", n),
            DataType::Map(k, v) => write!(f, "MAP<{},{}>", k, v),
            DataType::List(t) => write!(f, "LIST<{}>", t),
            DataType::Set(t) => write!(f, "SET<{}>", t),
            DataType::Order(t) => write!(f, "ORDER<{}>", t),
        }
    }
}

/// Error raised for an unparseable or ill-formed data type spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSpecError {
    pub message: String,
}

impl fmt::Display for TypeSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for TypeSpecError {}

fn err<T>(message: impl Into<String>) -> Result<T, TypeSpecError> {
    Err(TypeSpecError {
        message: message.into(),
    })
}

struct TypeParser<'a> {
    rest: &'a str,
}

impl<'a> TypeParser<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if let Some(stripped) = self.rest.strip_prefix(c) {
            self.rest = stripped;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let end = self
            .rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest.len());
        if end == 0 {
            return None;
        }
        let (word, rest) = self.rest.split_at(end);
        self.rest = rest;
        Some(word)
    }

    fn parse_type(&mut self) -> Result<DataType, TypeSpecError> {
        let name = match self.word() {
            Some(w) => w,
            None => return err("expected a data type name"),
        };
        let upper = name.to_ascii_uppercase();
        match upper.as_str() {
            "INT" => Ok(DataType::Int),
            "UINT" => Ok(DataType::UInt),
            "FLOAT" => Ok(DataType::Float),
            "DOUBLE" => Ok(DataType::Double),
            "BOOL" => Ok(DataType::Bool),
            "STRING" => Ok(DataType::String),
            "DATETIME" => Ok(DataType::DateTime),
            "VARCHAR" => {
                if !self.eat('(') {
                    return err("VARCHAR requires a length, e.g. VARCHAR(9)");
                }
                let digits = match self.word() {
                    Some(w) if w.chars().all(|c| c.is_ascii_digit()) => w,
                    _ => return err("VARCHAR length must be an integer"),
                };
                let n: u32 = digits
                    .parse()
                    .map_err(|_| TypeSpecError {
                        message: format!("VARCHAR length '{}' out of range", digits),
                    })?;
                if n == 0 {
                    return err("VARCHAR length must be at least 1");
                }
                if !self.eat(')') {
                    return err("missing ')' after VARCHAR length");
                }
                Ok(DataType::Varchar(n))
            }
            "MAP" => {
                if !self.eat('<') {
                    return err("MAP requires <key,value> parameters");
                }
                let key = self.parse_type()?;
                if !key.is_scalar() {
                    return err(format!("MAP key must be a scalar type, got {}", key));
                }
                if !self.eat(',') {
                    return err("MAP requires two parameters separated by ','");
                }
                let value = self.parse_type()?;
                if !self.eat('>') {
                    return err("missing '>' after MAP parameters");
                }
                Ok(DataType::Map(Box::new(key), Box::new(value)))
            }
            "LIST" | "SET" | "ORDER" => {
                if !self.eat('<') {
                    return err(format!("{} requires an <element> parameter", upper));
                }
                let elem = Box::new(self.parse_type()?);
                if !self.eat('>') {
                    return err(format!("missing '>' after {} element type", upper));
                }
                Ok(match upper.as_str() {
                    "LIST" => DataType::List(elem),
                    "SET" => DataType::Set(elem),
                    _ => DataType::Order(elem),
                })
            }
            _ => err(format!("unknown data type '{}'", name)),
        }
    }
}

/// Parses a data type spec such as `VARCHAR(9)` or `LIST<MAP<STRING,INT>>`.
pub fn parse_data_type(spec: &str) -> Result<DataType, TypeSpecError> {
    let mut parser = TypeParser { rest: spec };
    let ty = parser.parse_type()?;
    parser.skip_ws();
    if !parser.rest.is_empty() {
        return err(format!(
            "unexpected trailing input '{}' after data type",
            parser.rest
        ));
    }
    Ok(ty)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        assert_eq!(parse_data_type("INT").unwrap(), DataType::Int);
        assert_eq!(parse_data_type("int").unwrap(), DataType::Int);
        assert_eq!(parse_data_type("VARCHAR(9)").unwrap(), DataType::Varchar(9));
        assert_eq!(parse_data_type("DATETIME").unwrap(), DataType::DateTime);
    }

    #[test]
    fn nested_containers() {
        // hand trace: LIST< MAP< STRING, INT > >
        let ty = parse_data_type("LIST<MAP<STRING,INT>>").unwrap();
        assert_eq!(
            ty,
            DataType::List(Box::new(DataType::Map(
                Box::new(DataType::String),
                Box::new(DataType::Int)
            )))
        );
        assert_eq!(ty.to_string(), "LIST<MAP<STRING,INT>>");
    }

    #[test]
    fn whitespace_tolerated() {
        assert_eq!(
            parse_data_type("MAP < STRING , LIST<INT> >").unwrap().to_string(),
            "MAP<STRING,LIST<INT>>"
        );
    }

    #[test]
    fn map_key_must_be_scalar() {
        let e = parse_data_type("MAP<LIST<INT>,INT>").unwrap_err();
        assert!(e.message.contains("scalar"));
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(parse_data_type("BLOB").is_err());
        assert!(parse_data_type("VARCHAR").is_err());
        assert!(parse_data_type("VARCHAR(0)").is_err());
        assert!(parse_data_type("MAP<STRING>").is_err());
        assert!(parse_data_type("INT x").is_err());
        assert!(parse_data_type("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for spec in ["INT", "VARCHAR(42)", "SET<STRING>", "ORDER<UINT>", "MAP<INT,SET<BOOL>>"] {
            let ty = parse_data_type(spec).unwrap();
            assert_eq!(parse_data_type(&ty.to_string()).unwrap(), ty);
        }
    }
}
