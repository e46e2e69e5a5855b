//! JSON output with every float written to 17 significant digits.

use std::io;

use lemniscate::Complex64;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

/// Pretty formatter whose floats are written as `d.dddddddddddddddde±x`.
struct SignificantDigits<'a> {
    inner: PrettyFormatter<'a>,
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.inner.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl Formatter for SignificantDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );
}

pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let formatter = SignificantDigits {
        inner: PrettyFormatter::with_indent(b"  "),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, formatter);
    value.serialize(&mut ser).expect("serializing to memory");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn complex(z: Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}

pub fn complexes(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

/// Finite floats as numbers; infinities and NaN as strings, which plain JSON
/// cannot carry.
pub fn real(x: f64) -> Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        Value::String(x.to_string())
    }
}
