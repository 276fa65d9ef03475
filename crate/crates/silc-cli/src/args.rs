use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "silc", version, about = "Semi-infinite flag combinatorics and characters")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Cartan type letter, with --rank
    #[arg(long = "type", global = true)]
    pub kind: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// JSON file holding a Cartan matrix, as [[2,-1],[-1,2]] or {"cartan": [...]}
    #[arg(long, global = true)]
    pub cartan: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Skip reading and writing the result cache
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Semi-infinite Bruhat order
    Order {
        #[command(subcommand)]
        op: OrderCmd,
    },
    /// Graded characters
    Char {
        #[command(subcommand)]
        op: CharCmd,
    },
    /// Pieri coefficient table a^u_w(lam)
    Pieri(PieriArgs),
    /// Section character and dimension for a Richardson pair
    H0(H0Args),
    /// Quasi-map Plücker data for SL_2 and SL_3
    Qmap {
        #[command(subcommand)]
        op: QmapCmd,
    },
    /// Dimension formulas
    Dim {
        #[command(subcommand)]
        op: DimCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrderCmd {
    /// Is w <= v?
    Le {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Covers s_a v of v
    Covers {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// largest delta coefficient of the reflecting roots
        #[arg(long, allow_hyphen_values = true)]
        bound: Option<String>,
    },
    /// Elements u with v <= u <= w
    Interval {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        radius: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CharCmd {
    /// Character of the simple module V(lam)
    Weyl {
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
    },
    /// Graded character of the Demazure submodule W_x(lam) of the global Weyl module
    Gweyl {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Demazure operators D_word applied to e^lam
    Demazure {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
}

#[derive(Debug, Args)]
pub struct PieriArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lam: String,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, allow_hyphen_values = true)]
    pub depth: String,
}

#[derive(Debug, Args)]
pub struct H0Args {
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lam: String,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, allow_hyphen_values = true)]
    pub depth: String,
}

#[derive(Debug, Subcommand)]
pub enum QmapCmd {
    /// Check the degree bounds and the incidence relation
    Validate {
        /// JSON file, or an inline JSON object
        #[arg(long, allow_hyphen_values = true)]
        data: String,
    },
    /// Defect divisor and degree balance
    Defect {
        #[arg(long, allow_hyphen_values = true)]
        data: String,
    },
    /// Value of the saturated map at 0 or inf
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        data: String,
        /// 0 or inf
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// also test membership in the Schubert variety of this finite element
        #[arg(long, allow_hyphen_values = true)]
        schubert: Option<String>,
        #[arg(long)]
        opposite: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum DimCmd {
    /// Dimension of the Richardson variety of v <= w
    Richardson {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Dimension of parabolic quasi-map spaces with a Schubert condition at 0
    Parabolic {
        /// comma separated node indices, may be empty
        #[arg(long, default_value = "")]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// finite Weyl group word, `e` for the identity
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
}

/// `(command, action, raw parameters)`.
pub fn flatten(cmd: Cmd) -> (&'static str, Option<&'static str>, BTreeMap<String, String>) {
    let mut p = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            p.insert(k.to_string(), v);
        }
    };
    let (c, a) = match cmd {
        Cmd::Order { op } => match op {
            OrderCmd::Le { w, v } => {
                put("w", Some(w));
                put("v", Some(v));
                ("order", "le")
            }
            OrderCmd::Covers { v, bound } => {
                put("v", Some(v));
                put("bound", bound);
                ("cover", "covers")
            }
            OrderCmd::Interval { v, w, radius } => {
                put("v", Some(v));
                put("w", Some(w));
                put("radius", radius);
                ("interval", "interval")
            }
        },
        Cmd::Char { op } => match op {
            CharCmd::Weyl { lam } => {
                put("lam", Some(lam));
                ("char", "weyl")
            }
            CharCmd::Gweyl { x, lam, window } => {
                put("x", Some(x));
                put("lam", Some(lam));
                put("window", Some(window));
                ("char", "gweyl")
            }
            CharCmd::Demazure { word, lam, window } => {
                put("word", Some(word));
                put("lam", Some(lam));
                put("window", Some(window));
                ("char", "demazure")
            }
        },
        Cmd::Pieri(a) => {
            put("w", Some(a.w));
            put("lam", Some(a.lam));
            put("window", Some(a.window));
            put("depth", Some(a.depth));
            return ("pieri", None, p);
        }
        Cmd::H0(a) => {
            put("v", Some(a.v));
            put("w", Some(a.w));
            put("lam", Some(a.lam));
            put("window", Some(a.window));
            put("depth", Some(a.depth));
            return ("h0", None, p);
        }
        Cmd::Qmap { op } => match op {
            QmapCmd::Validate { data } => {
                put("data", Some(data));
                ("qmap", "validate")
            }
            QmapCmd::Defect { data } => {
                put("data", Some(data));
                ("qmap", "defect")
            }
            QmapCmd::Eval { data, at, schubert, opposite } => {
                put("data", Some(data));
                put("at", Some(at));
                put("schubert", schubert);
                if opposite {
                    put("opposite", Some("true".into()));
                }
                ("qmap", "eval")
            }
        },
        Cmd::Dim { op } => match op {
            DimCmd::Richardson { v, w } => {
                put("v", Some(v));
                put("w", Some(w));
                ("dim", "richardson")
            }
            DimCmd::Parabolic { j, beta, w } => {
                put("j", Some(j));
                put("beta", Some(beta));
                put("w", Some(w));
                ("dim", "parabolic")
            }
        },
    };
    (c, Some(a), p)
}
