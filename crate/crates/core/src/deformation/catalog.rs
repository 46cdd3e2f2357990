//! Static description of every catalogued moment sequence.

use serde::Serialize;

/// Where the coherent-state label lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Plane,
    Disk,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: &'static str,
    pub default: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub params: &'static [ParamSpec],
    pub region: Region,
    pub rho: &'static str,
    pub f: &'static str,
    #[serde(rename = "H")]
    pub h: &'static str,
    pub notes: &'static str,
}

const P: ParamSpec = ParamSpec { name: "p", domain: "integer >= 0", default: 1.0 };
const ALPHA_ML: ParamSpec = ParamSpec { name: "alpha", domain: "real > 0", default: 1.0 };
const BETA_ML: ParamSpec = ParamSpec { name: "beta", domain: "real > 0", default: 1.0 };
const ALPHA_D: ParamSpec = ParamSpec { name: "alpha", domain: "real > -1", default: 1.0 };
const Q: ParamSpec = ParamSpec { name: "q", domain: "0 < q <= 1", default: 0.8 };
const KAPPA: ParamSpec = ParamSpec {
    name: "kappa",
    domain: "real >= 1/2 (discrete series: 1, 3/2, 2, ...)",
    default: 1.0,
};
const ALPHA_LL: ParamSpec = ParamSpec { name: "alpha", domain: "real > -1", default: 0.0 };
const M_LL: ParamSpec = ParamSpec { name: "m", domain: "integer >= 0", default: 0.0 };

pub(crate) const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: "canonical",
        aliases: &[],
        params: &[],
        region: Region::Plane,
        rho: "n!",
        f: "1",
        h: "n",
        notes: "undeformed oscillator",
    },
    CatalogEntry {
        id: "kps-a",
        aliases: &[],
        params: &[P],
        region: Region::Plane,
        rho: "(n+p)!/p!",
        f: "sqrt((n+p)/n)",
        h: "n+p",
        notes: "shifted harmonic spectrum",
    },
    CatalogEntry {
        id: "ml",
        aliases: &["kps-b"],
        params: &[ALPHA_ML, BETA_ML],
        region: Region::Plane,
        rho: "Gamma(alpha*n+beta)/Gamma(beta)",
        f: "sqrt((n+beta-1)/n) [alpha=1]",
        h: "n+beta-1 [alpha=1]",
        notes: "Mittag-Leffler states",
    },
    CatalogEntry {
        id: "kps-c",
        aliases: &[],
        params: &[],
        region: Region::Plane,
        rho: "n!/(n+1)",
        f: "sqrt(n/(n+1))",
        h: "n^2/(n+1)",
        notes: "dual is kps-a with p=1",
    },
    CatalogEntry {
        id: "kps-d",
        aliases: &[],
        params: &[ALPHA_D],
        region: Region::Plane,
        rho: "Gamma(n+1+alpha)/(Gamma(1+alpha)(1+n))",
        f: "sqrt((n+alpha)/(n+1))",
        h: "n(n+alpha)/(n+1)",
        notes: "",
    },
    CatalogEntry {
        id: "kps-e",
        aliases: &[],
        params: &[],
        region: Region::Plane,
        rho: "(n!)^2",
        f: "sqrt(n)",
        h: "n^2",
        notes: "dual: harmonious states, f = 1/sqrt(n)",
    },
    CatalogEntry {
        id: "kps-f",
        aliases: &[],
        params: &[],
        region: Region::Plane,
        rho: "(n!)^3",
        f: "n",
        h: "n^3",
        notes: "",
    },
    CatalogEntry {
        id: "kps-g",
        aliases: &[],
        params: &[],
        region: Region::Plane,
        rho: "n! Gamma(n+4/3)/Gamma(4/3)",
        f: "sqrt(n+1/3)",
        h: "n(n+1/3)",
        notes: "moment sequence chosen to reproduce f and H",
    },
    CatalogEntry {
        id: "kps-h",
        aliases: &[],
        params: &[],
        region: Region::Plane,
        rho: "(n!)^3 Gamma(3/2)/Gamma(n+3/2)",
        f: "n/sqrt(n+1/2)",
        h: "n^3/(n+1/2)",
        notes: "moment sequence chosen to reproduce f and H",
    },
    CatalogEntry {
        id: "ps",
        aliases: &[],
        params: &[Q],
        region: Region::Plane,
        rho: "n! q^(-n(n-1))",
        f: "q^(1-n)",
        h: "n q^(2(1-n))",
        notes: "Penson-Solomon states, C_n = q^(n(n-1)/2)/sqrt(n!)",
    },
    CatalogEntry {
        id: "bg",
        aliases: &[],
        params: &[KAPPA],
        region: Region::Plane,
        rho: "n! Gamma(n+2kappa)/Gamma(2kappa)",
        f: "sqrt(n+2kappa-1)",
        h: "n(n+2kappa-1)",
        notes: "Barut-Girardello su(1,1) states",
    },
    CatalogEntry {
        id: "gp",
        aliases: &[],
        params: &[KAPPA],
        region: Region::Disk,
        rho: "n! Gamma(2kappa)/Gamma(n+2kappa)",
        f: "1/sqrt(n+2kappa-1)",
        h: "n/(n+2kappa-1)",
        notes: "Gilmore-Perelomov su(1,1) states, dual of bg",
    },
    CatalogEntry {
        id: "ll-paper",
        aliases: &[],
        params: &[ALPHA_LL, M_LL],
        region: Region::Plane,
        rho: "(k!)^2 [Gamma(k+alpha+m+1)/Gamma(alpha+m+1)]^2",
        f: "sqrt(k)(k+alpha+m)",
        h: "k^2 (k+alpha+m)^2",
        notes: "Landau levels, k = n-m; lowering amplitude from \
                f(n)=(n-m+1)(n+alpha+1)/sqrt(n+1) with A=f(n)a",
    },
    CatalogEntry {
        id: "ll-action",
        aliases: &["ll"],
        params: &[ALPHA_LL, M_LL],
        region: Region::Plane,
        rho: "k! Gamma(k+alpha+m+1)/Gamma(alpha+m+1)",
        f: "sqrt(k+alpha+m)",
        h: "k(k+alpha+m)",
        notes: "Landau levels, k = n-m; K_-|n,m> = sqrt((n+alpha)(n-m))|n-1,m>",
    },
    CatalogEntry {
        id: "kps-da",
        aliases: &[],
        params: &[],
        region: Region::Disk,
        rho: "2/(n+2)",
        f: "sqrt((n+1)/(n(n+2)))",
        h: "(n+1)/(n+2)",
        notes: "weight 2x on [0,1]",
    },
    CatalogEntry {
        id: "kps-db",
        aliases: &[],
        params: &[],
        region: Region::Disk,
        rho: "6/((n+2)(n+3))",
        f: "sqrt((n+1)/(n(n+3)))",
        h: "(n+1)/(n+3)",
        notes: "weight 6x(1-x) on [0,1]",
    },
    CatalogEntry {
        id: "kps-dc",
        aliases: &[],
        params: &[],
        region: Region::Disk,
        rho: "(pi/4)(n!)^2/Gamma(n+3/2)^2",
        f: "2 sqrt(n)/(2n+1)",
        h: "4n^2/(2n+1)^2",
        notes: "",
    },
    CatalogEntry {
        id: "kps-dd",
        aliases: &[],
        params: &[],
        region: Region::Disk,
        rho: "(3pi/8) n!(n+1)!/(Gamma(n+3/2)Gamma(n+5/2))",
        f: "2 sqrt((n+1)/((2n+1)(2n+3)))",
        h: "4n(n+1)/((2n+1)(2n+3))",
        notes: "",
    },
    CatalogEntry {
        id: "kps-de",
        aliases: &[],
        params: &[],
        region: Region::Disk,
        rho: "Gamma(1+c-a)Gamma(1+c-b)Gamma(n+1)Gamma(n+1+c-a-b)\
              /(Gamma(1+c-a-b)Gamma(n+1+c-a)Gamma(n+1+c-b)), a=b=1/2, c=3/2",
        f: "sqrt(n+1/2)/(n+1)",
        h: "n(n+1/2)/(n+1)^2",
        notes: "hypergeometric family at its pinned parameters",
    },
    CatalogEntry {
        id: "kps-df",
        aliases: &[],
        params: &[],
        region: Region::Disk,
        rho: "3 Gamma(5/2)(n+1)!/((n+3)Gamma(n+5/2))",
        f: "sqrt((n^2+3n+2)/(n(n+3)(n+3/2)))",
        h: "(n^2+3n+2)/((n+3)(n+3/2))",
        notes: "",
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn lookup(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id || e.aliases.contains(&id))
}
