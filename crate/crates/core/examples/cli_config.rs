//! Drive the data-export layer from a flat key=value config, as the `qwalk`
//! binary does, and print the JSON density output head.

use cmv_qwalk::cli::{parse_config_text, render, Command, RunConfig};
use cmv_qwalk::error::Result;

const CONFIG: &str = "\
# Fig. 2 style parameters
rho = 1/sqrt2
nu = pi/4
alpha = 0.7071067811865476,0
beta = 0,0.7071067811865476
format = json
";

pub fn run() -> Result<String> {
    let settings = parse_config_text(CONFIG)?;
    let cfg = RunConfig::from_settings(Command::Density, &settings)?;
    let text = String::from_utf8(render(&cfg)?).expect("utf-8");
    for line in text.lines().take(24) {
        println!("{line}");
    }
    Ok(text)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
