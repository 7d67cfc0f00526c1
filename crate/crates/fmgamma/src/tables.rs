//! Pinned reference constants and the checks that regenerate them.
//!
//! Five data sets published for this integral are reproduced by the
//! crate and guarded against regression:
//!
//! * the coefficients of the squared-function power series for m = 0
//!   and m = 2 ([`series::square_coefficients`](crate::series::square_coefficients)),
//! * worst-case cosine-fit deviations of `u^{m-1/2}`
//!   ([`fourier_table`](crate::quadmethods::fourier_table)),
//! * worst-case Taylor term counts over the production grid and its
//!   threefold denser variant ([`gridtaylor`](crate::gridtaylor)),
//! * the 20-point moment quadrature rules for the weights `x^2` and
//!   `x^4` ([`gauss_jacobi_rule`](crate::quadmethods::gauss_jacobi_rule)),
//! * the complex Laplace sampling rule ([`salzer_rule`](crate::salzer::salzer_rule)).
//!
//! Each `verify_*` function rebuilds its data set from scratch, diffs it
//! against the embedded copy, and returns a one-line summary; failures
//! name the offending entries.  The CLI exposes them under
//! `tables --verify <name>`.

use num_complex::Complex64;

use crate::gridtaylor::{self, GridSpec, TaylorGrid};
use crate::quadmethods::{fourier_table, gauss_jacobi_rule_x};
use crate::salzer::salzer_rule;
use crate::series::square_coefficients_x;
use crate::xprec::{dec, XReal};
use crate::{Error, Result};

/// One printed constant, `0.digits * 10^exp`, every published digit kept.
#[derive(Clone, Copy, Debug)]
pub struct PrintedReal {
    pub exp: i32,
    pub digits: &'static str,
}

impl PrintedReal {
    /// The exact string [`dec::format_sci`] emits for a matching value.
    fn sci(&self) -> String {
        let (head, tail) = self.digits.split_at(1);
        if tail.is_empty() {
            format!("{head}e{}", self.exp - 1)
        } else {
            format!("{head}.{tail}e{}", self.exp - 1)
        }
    }

    /// Double-word value of the printed number.
    fn value(&self) -> XReal {
        dec::parse(&self.sci()).expect("embedded constant parses")
    }
}

const fn pr(exp: i32, digits: &'static str) -> PrintedReal {
    PrintedReal { exp, digits }
}

/// Printed coefficients `c_n` of the squared-function series, 27
/// significant digits, columns m = 0 and m = 2, rows n = 0..=20.
const SQUARE_SERIES_COEFFS: [(PrintedReal, PrintedReal); 21] = [
    (pr(1, "1"), pr(-1, "400000000000000000000000000")),
    (pr(0, "666666666666666666666666667"), pr(-1, "571428571428571428571428571")),
    (pr(0, "311111111111111111111111111"), pr(-1, "426303854875283446712018141")),
    (pr(0, "114285714285714285714285714"), pr(-1, "219336219336219336219336219")),
    (pr(-1, "351322751322751322751322751"), pr(-2, "869747536414203080869747536")),
    (pr(-2, "936347603014269680936347603"), pr(-2, "282147482147482147482147482")),
    (pr(-2, "221154506868792583078297364"), pr(-3, "777103664804199563557852328")),
    (pr(-3, "469653802987136320469653803"), pr(-3, "186373272028586786068726213")),
    (pr(-4, "906122039019642505481285438"), pr(-4, "396416295893495680292990310")),
    (pr(-4, "160102863921233374277749923"), pr(-5, "758266184345082723656120978")),
    (pr(-5, "260776050517784531964366578"), pr(-5, "131867061458730315441573553")),
    (pr(-6, "393758873504700134360389004"), pr(-6, "210339899099545682138376814")),
    (pr(-7, "553887157733648509739501203"), pr(-7, "309979643679842498383620914")),
    (pr(-8, "729011502968230897699716049"), pr(-8, "424639365523994831986834166")),
    (pr(-9, "901287164837490715098084399"), pr(-9, "543551622746159408655512790")),
    (pr(-9, "105033953753128822744305164"), pr(-10, "653045539725446173673461647")),
    (pr(-10, "115746252845873781753063617"), pr(-11, "739312795811477673516467214")),
    (pr(-11, "120958823002785231021337856"), pr(-12, "791392423639157016726023806")),
    (pr(-12, "120184907818966373634131002"), pr(-13, "803457906212657330149072255")),
    (pr(-13, "113807780888498702265902507"), pr(-14, "775764222941899253617165684")),
    (pr(-14, "102930216582138497901039695"), pr(-15, "714102105093626044089405580")),
];

/// Sample counts of the printed cosine-fit deviations, largest first.
const FOURIER_SAMPLES: [usize; 3] = [512, 256, 128];

/// Printed worst-case deviation of the truncated cosine fit from
/// `u^{m-1/2}` on [0, 1], rows (m, per-sample-count deviations).
const FOURIER_FIT_DEVIATIONS: [(u32, [f64; 3]); 3] = [
    (1, [3.6e-2, 5.1e-2, 7.4e-2]),
    (2, [4.6e-5, 1.3e-4, 3.7e-4]),
    (3, [8.2e-6, 3.5e-5, 1.4e-4]),
];

/// Accuracy targets of the printed worst-case Taylor term counts.
const TAYLOR_TERM_DIGITS: [u32; 5] = [12, 14, 15, 16, 17];

/// Printed worst-case term counts on the stride-3 production grid,
/// rows (m, counts per target).  The empty slot marks a target the
/// stored ladder of 30 indices cannot reach for m = 5.
const TAYLOR_TERMS_COARSE: [(u32, [Option<u32>; 5]); 4] = [
    (0, [Some(21), Some(23), Some(24), Some(25), Some(26)]),
    (1, [Some(21), Some(23), Some(24), Some(25), Some(26)]),
    (3, [Some(21), Some(23), Some(24), Some(25), Some(26)]),
    (5, [Some(21), Some(23), Some(24), Some(25), None]),
];

/// Printed worst-case term counts on the threefold denser stride-1 grid.
const TAYLOR_TERMS_DENSE: [(u32, [Option<u32>; 5]); 3] = [
    (0, [Some(14), Some(16), Some(17), Some(17), Some(18)]),
    (1, [Some(14), Some(16), Some(16), Some(17), Some(18)]),
    (5, [Some(14), Some(15), Some(16), Some(17), Some(18)]),
];

/// Printed 20-point rule for the moment weight `x^2`: (node, weight)
/// rows, 27 significant digits.
const MOMENT_RULE_K2: [(PrintedReal, PrintedReal); 20] = [
    (pr(-1, "142042111593581533199768686"), pr(-5, "374922099333713477252413688")),
    (pr(-1, "378512878495018102908391936"), pr(-4, "410391020873202055490740417")),
    (pr(-1, "713009850812494546549021628"), pr(-3, "193888309617511810769838525")),
    (pr(0, "113858697085452856312717070"), pr(-3, "607045704267258254152723740")),
    (pr(0, "164621085368438274828481605"), pr(-2, "147744444197148580628385764")),
    (pr(0, "222507407964513246448874054"), pr(-2, "302248917090737937491848598")),
    (pr(0, "286284388984712319257916565"), pr(-2, "543209080612302745001201114")),
    (pr(0, "354592954222632433382679165"), pr(-2, "881355607824335532892527317")),
    (pr(0, "425977341817173128272487803"), pr(-1, "131409192566616517421081337")),
    (pr(0, "498916184517151448629375346"), pr(-1, "182205034182686915518433153")),
    (pr(0, "571854959066743315384574965"), pr(-1, "236822904142460539808664503")),
    (pr(0, "643239129897546894352944933"), pr(-1, "290024047455892851699163573")),
    (pr(0, "711547287818727615228059293"), pr(-1, "335564314534754934790027148")),
    (pr(0, "775323580615694961590618035"), pr(-1, "366974204720181327132542496")),
    (pr(0, "833208746518990569987019299"), pr(-1, "378473903769223407153546955")),
    (pr(0, "883969092344513195053302568"), pr(-1, "365879165532270649866092989")),
    (pr(0, "926522808214714716942433455"), pr(-1, "327346443175731480474796486")),
    (pr(0, "959963099538093219003679850"), pr(-1, "263825644291255847945133897")),
    (pr(0, "983577911866012167097458386"), pr(-1, "179137523257385591017739577")),
    (pr(0, "996869316259256410437849858"), pr(-2, "797579273627665168522730903")),
];

/// Printed 20-point rule for the moment weight `x^4`.
const MOMENT_RULE_K4: [(PrintedReal, PrintedReal); 20] = [
    (pr(-1, "282367221829331583898934765"), pr(-7, "171489567015906667815599902")),
    (pr(-1, "593938154817751780322522762"), pr(-6, "440025639291105578951828823")),
    (pr(-1, "988250831150225262212347131"), pr(-5, "413900724119088670178719260")),
    (pr(0, "145920471227084452769312100"), pr(-4, "229635979881845930197982398")),
    (pr(0, "199802098226471397014274440"), pr(-4, "907451461904243162330099036")),
    (pr(0, "259435172924709248624323270"), pr(-3, "281471532039879029772225287")),
    (pr(0, "323665170861772757077832399"), pr(-3, "725623616625890380039636288")),
    (pr(0, "391245042279918490749256395"), pr(-2, "161256588461398806395269959")),
    (pr(0, "460861152278328674231868983"), pr(-2, "316609787398703111701922567")),
    (pr(0, "531159535851314543423232530"), pr(-2, "558643304722474380678643136")),
    (pr(0, "600772567899009318145452939"), pr(-2, "896463278996732447462962435")),
    (pr(0, "668345741812982731345227612"), pr(-1, "131908899308882527725861737")),
    (pr(0, "732564119517517701223330384"), pr(-1, "178894967456314163407787983")),
    (pr(0, "792177975000657568549518999"), pr(-1, "224144100215713193139298020")),
    (pr(0, "846027150209447611698432065"), pr(-1, "259267829451372333710263530")),
    (pr(0, "893063660260154227964505363"), pr(-1, "275517085612976959329639376")),
    (pr(0, "932372120985837169465290479"), pr(-1, "265830703497369168587923015")),
    (pr(0, "963187641689199087742433404"), pr(-1, "226831804240368255515804992")),
    (pr(0, "984911082762489563304922913"), pr(-1, "160175399312516574642090900")),
    (pr(0, "997124584524283684936496169"), pr(-2, "728779141997403302973286681")),
];

fn failure(name: &str, bad: Vec<String>) -> Error {
    let shown = bad.iter().take(8).cloned().collect::<Vec<_>>().join("; ");
    let more = if bad.len() > 8 { format!(" and {} more", bad.len() - 8) } else { String::new() };
    Error::Build(format!("{name}: {} entries disagree: {shown}{more}", bad.len()))
}

/// Regenerates the squared-function series coefficients in double-word
/// arithmetic and demands every printed digit back.
pub fn verify_square_series() -> Result<String> {
    let mut bad = Vec::new();
    for (m, col) in [(0u32, 0usize), (2, 1)] {
        let regen = square_coefficients_x(m, 20);
        for (n, c) in regen.iter().enumerate() {
            let row = &SQUARE_SERIES_COEFFS[n];
            let printed = if col == 0 { &row.0 } else { &row.1 };
            let got = dec::format_sci(*c, printed.digits.len());
            let want = printed.sci();
            if got != want {
                bad.push(format!("m={m} n={n}: regenerated {got}, printed {want}"));
            }
        }
    }
    if bad.is_empty() {
        Ok("square-series: 42 coefficients reproduce all printed digits".into())
    } else {
        Err(failure("square-series", bad))
    }
}

/// Rebuilds the cosine fits and brackets each printed worst-case
/// deviation within a factor of two.
pub fn verify_fourier_fit() -> Result<String> {
    let mut bad = Vec::new();
    for (m, row) in FOURIER_FIT_DEVIATIONS {
        for (j, &printed) in row.iter().enumerate() {
            let got = fourier_table(m, FOURIER_SAMPLES[j]).fit_error;
            if !(printed / 2.0..=printed * 2.0).contains(&got) {
                bad.push(format!(
                    "m={m} samples={}: fit error {got:.2e}, printed {printed:.1e}",
                    FOURIER_SAMPLES[j]
                ));
            }
        }
    }
    if bad.is_empty() {
        Ok("fourier-fit: 9 deviations within a factor 2 of print".into())
    } else {
        Err(failure("fourier-fit", bad))
    }
}

/// Worst Taylor term count for one (m, target) over the covered
/// rectangle, swept on a quarter-unit lattice that visits the cell
/// centers, the worst offsets of both production strides.  `None`
/// means at least one point cannot reach the target.
fn worst_terms(grid: &TaylorGrid, m: u32, target_d: f64) -> Option<usize> {
    let (re_lo, re_hi) = gridtaylor::RE_COVER;
    let re_steps = ((re_hi - re_lo) * 4.0).round() as i32;
    let im_steps = (gridtaylor::IM_COVER * 4.0).round() as i32;
    let mut max = 0usize;
    for i in 0..=re_steps {
        let re = re_lo + f64::from(i) * 0.25;
        for j in 0..=im_steps {
            let z = Complex64::new(re, f64::from(j) * 0.25);
            match gridtaylor::terms_needed(m, z, target_d, grid) {
                Ok(t) => max = max.max(t),
                Err(_) => return None,
            }
        }
    }
    Some(max)
}

fn check_term_table(
    grid: &TaylorGrid,
    table: &[(u32, [Option<u32>; 5])],
    label: &str,
    bad: &mut Vec<String>,
) {
    for (m, row) in table {
        for (col, printed) in row.iter().enumerate() {
            let d = TAYLOR_TERM_DIGITS[col];
            let got = worst_terms(grid, *m, f64::from(d));
            match (got, printed) {
                (Some(g), Some(p)) if (g as i64 - i64::from(*p)).abs() <= 2 => {}
                (None, None) => {}
                _ => bad.push(format!(
                    "{label} m={m} d={d}: regenerated {got:?}, printed {printed:?}"
                )),
            }
        }
    }
}

/// Rebuilds both production grids and reproduces the printed worst-case
/// term counts within the +-2 washout of the unspecified sweep, free
/// slots included.
pub fn verify_taylor_terms() -> Result<String> {
    let coarse = gridtaylor::build_grid(&GridSpec::default())?;
    let dense = gridtaylor::build_grid(&GridSpec::spanning(1.0, 30))?;
    let mut bad = Vec::new();
    check_term_table(&coarse, &TAYLOR_TERMS_COARSE, "stride 3", &mut bad);
    check_term_table(&dense, &TAYLOR_TERMS_DENSE, "stride 1", &mut bad);
    if bad.is_empty() {
        Ok("taylor-terms: 35 worst-case counts within +-2 of print, free slot unreachable".into())
    } else {
        Err(failure("taylor-terms", bad))
    }
}

/// Regenerates both 20-point moment rules in double-word arithmetic and
/// checks every printed node and weight to 24 significant digits.
pub fn verify_moment_rules() -> Result<String> {
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for (k, table) in [(2u32, &MOMENT_RULE_K2), (4, &MOMENT_RULE_K4)] {
        let rule = gauss_jacobi_rule_x(20, k)?;
        for (i, ((x, w), printed)) in rule.iter().zip(table.iter()).enumerate() {
            for (label, mine, p) in [("x", x, &printed.0), ("w", w, &printed.1)] {
                let want = p.value();
                let rel = ((*mine - want) / want).to_f64().abs();
                worst = worst.max(rel);
                if rel > 1e-24 {
                    bad.push(format!("k={k} {label}_{}: relative gap {rel:.2e}", i + 1));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("gauss-jacobi: 80 entries within 1e-24 of print, worst gap {worst:.1e}"))
    } else {
        Err(failure("gauss-jacobi", bad))
    }
}

/// Checks the complex Laplace rule: consecutive entries conjugatedly
/// paired, and the reciprocal moments of the Christoffel numbers
/// reproducing the inverse factorials the rule was solved for.
pub fn verify_salzer() -> Result<String> {
    let rule = salzer_rule();
    let mut bad = Vec::new();
    if rule.n != 16 || rule.inv_p.len() != 16 || rule.a_i.len() != 16 {
        bad.push(format!("rule size {} is not the printed 16", rule.n));
    }
    for k in (1..rule.inv_p.len()).step_by(2) {
        if rule.inv_p[k] != rule.inv_p[k - 1].conj() || rule.a_i[k] != rule.a_i[k - 1].conj() {
            bad.push(format!("entries {} and {} are not a conjugate pair", k, k + 1));
        }
    }
    // the rule is exact for 1/(2 pi i) int e^p p^{-j} dp = 1/(j-1)!, up
    // to the cancellation noise of the 1e8-sized Christoffel numbers
    for j in 1..=8u32 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mag = 0.0f64;
        for (&ip, &ai) in rule.inv_p.iter().zip(&rule.a_i) {
            let term = ai * ip.powu(j);
            sum += term;
            mag += term.norm();
        }
        let want = 1.0 / (1..j).map(f64::from).product::<f64>();
        let gap = (sum - Complex64::new(want, 0.0)).norm();
        if gap > 1e-13 * mag {
            bad.push(format!("reciprocal moment {j}: gap {gap:.2e} against noise {mag:.2e}"));
        }
    }
    if bad.is_empty() {
        Ok("salzer: 8 conjugate pairs, reciprocal moments 1..=8 hold to the noise floor".into())
    } else {
        Err(failure("salzer", bad))
    }
}

/// Identifiers accepted by [`verify`].
pub const TABLE_IDS: [&str; 5] =
    ["square-series", "fourier-fit", "taylor-terms", "gauss-jacobi", "salzer"];

/// Runs one verifier by name, or every one of them for `all`.
pub fn verify(id: &str) -> Result<String> {
    match id {
        "square-series" => verify_square_series(),
        "fourier-fit" => verify_fourier_fit(),
        "taylor-terms" => verify_taylor_terms(),
        "gauss-jacobi" => verify_moment_rules(),
        "salzer" => verify_salzer(),
        "all" => {
            let mut lines = Vec::with_capacity(TABLE_IDS.len());
            for id in TABLE_IDS {
                lines.push(verify(id)?);
            }
            Ok(lines.join("\n"))
        }
        _ => Err(Error::Domain("unknown table id")),
    }
}
