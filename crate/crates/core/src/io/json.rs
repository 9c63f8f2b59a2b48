use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

use crate::error::Result;
use crate::network::{NetworkDoc, ReluNetwork};

/// Compact formatter writing every float with 17 significant digits.
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    value.serialize(&mut Serializer::with_formatter(&mut buf, Sig17))?;
    Ok(String::from_utf8(buf).expect("serde_json writes utf-8"))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut s = to_json_string(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn network_to_json(net: &ReluNetwork) -> Result<String> {
    to_json_string(&NetworkDoc::from(net))
}

pub fn network_from_json(s: &str) -> Result<ReluNetwork> {
    ReluNetwork::try_from(serde_json::from_str::<NetworkDoc>(s)?)
}

pub fn save_network(path: &Path, net: &ReluNetwork) -> Result<()> {
    write_json(path, &NetworkDoc::from(net))
}

pub fn load_network(path: &Path) -> Result<ReluNetwork> {
    ReluNetwork::try_from(read_json::<NetworkDoc>(path)?)
}
