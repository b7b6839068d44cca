//! `wander`: certify wandering residue classes of rational maps over F(T).

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wander_core::commands::run;

#[derive(Parser)]
#[command(name = "wander", version, about = "Residue-class dynamics of rational maps over F(T)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Base field: `q` or `fp:<p>`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct MapArg {
    /// A map in z over F(T), or `example:NAME`.
    #[arg(long)]
    map: String,
}

#[derive(Args)]
struct DiskArgs {
    #[command(flatten)]
    map: MapArg,
    #[arg(long, allow_hyphen_values = true)]
    center: String,
    /// Valuation of the radius, an integer or `p/q`.
    #[arg(long = "radius-val", allow_hyphen_values = true)]
    radius_val: String,
    #[arg(long, default_value = "open")]
    kind: String,
}

#[derive(Subcommand)]
enum Command {
    /// Reduction data and classification.
    Classify(MapArg),
    /// Residue classes where the reduction degenerates.
    BadClasses(MapArg),
    /// Forward orbit of a residue class.
    Orbit {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Also push the class past its last bad hit within this many steps.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Wandering-domain certificates for distinct grand orbits.
    Wander {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long)]
        require_julia: bool,
    },
    /// Growth of residue classes meeting the Julia set.
    Julia {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Repelling fixed point inside a residue class.
    Fixedpoints {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Newton polygon of a polynomial in z over F(T).
    Newton {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Image of a disk.
    DiskImage(DiskArgs),
    /// Whether the map is injective on a disk.
    Injectivity(DiskArgs),
    /// Conjugate by a Mobius transformation `a,b,c,d`.
    Conjugate {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        mobius: String,
    },
    /// Named example maps.
    Example {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        name: Option<String>,
    },
}

fn options(command: Command) -> (&'static str, BTreeMap<String, String>) {
    let mut o = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        o.insert(k.to_string(), v);
    };
    let name = match command {
        Command::Classify(m) => {
            put("map", m.map);
            "classify"
        }
        Command::BadClasses(m) => {
            put("map", m.map);
            "bad-classes"
        }
        Command::Orbit { map, class, depth, horizon } => {
            put("map", map.map);
            put("class", class);
            put("depth", depth.to_string());
            if let Some(h) = horizon {
                put("horizon", h.to_string());
            }
            "orbit"
        }
        Command::Wander { map, count, depth, require_julia } => {
            put("map", map.map);
            put("count", count.to_string());
            put("depth", depth.to_string());
            if require_julia {
                put("require-julia", "true".into());
            }
            "wander"
        }
        Command::Julia { map, depth } => {
            put("map", map.map);
            put("depth", depth.to_string());
            "julia"
        }
        Command::Fixedpoints { map, class } => {
            put("map", map.map);
            put("class", class);
            "fixedpoints"
        }
        Command::Newton { poly } => {
            put("poly", poly);
            "newton"
        }
        Command::DiskImage(d) => {
            disk(&mut put, d);
            "disk-image"
        }
        Command::Injectivity(d) => {
            disk(&mut put, d);
            "injectivity"
        }
        Command::Conjugate { map, mobius } => {
            put("map", map.map);
            put("mobius", mobius);
            "conjugate"
        }
        Command::Example { list, name } => {
            if list {
                put("list", "true".into());
            }
            if let Some(n) = name {
                put("name", n);
            }
            "example"
        }
    };
    (name, o)
}

fn disk(put: &mut impl FnMut(&str, String), d: DiskArgs) {
    put("map", d.map.map);
    put("center", d.center);
    put("radius-val", d.radius_val);
    put("kind", d.kind);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, mut opts) = options(cli.command);
    if let Some(f) = cli.field {
        opts.insert("field".into(), f);
    }
    let report = run(name, &opts);
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}
