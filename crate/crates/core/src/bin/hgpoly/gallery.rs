//! Regenerates the image gallery: amoebas with reports, compactified
//! and weighted compactified amoebas, deformation sweeps and the aster.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::Instant;

use hgpoly::amoeba::{self, LogWindow};
use hgpoly::families::{self, F1Parameters, Progression};
use hgpoly::hypergeometric::{self, GammaFactor, OreSatoCoefficient};
use hgpoly::io;
use hgpoly::moment;
use hgpoly::poly::rational_from_i64;
use hgpoly::{ComplexPolynomial, LaurentPolynomial, Rational};
use serde_json::{json, Value};

use crate::{write_output, CliError, CliResult};

fn gamma(a: [i64; 2], c: i64, reciprocal: bool) -> GammaFactor {
    if reciprocal {
        GammaFactor::reciprocal(a.to_vec(), rational_from_i64(c))
    } else {
        GammaFactor::numerator(a.to_vec(), rational_from_i64(c))
    }
}

/// `sum phi(s) x^s` over a box, scaled to coprime integers.
fn series(phi: &OreSatoCoefficient, lo: [i64; 2], hi: [i64; 2]) -> CliResult<LaurentPolynomial> {
    Ok(hypergeometric::series_polynomial_over_box(phi, &lo, &hi)?.primitive_integer_multiple())
}

fn expr(s: &str) -> CliResult<LaurentPolynomial> {
    Ok(io::parse_polynomial_expr(s, 2)?)
}

struct Ctx<'a> {
    dir: &'a Path,
    res: usize,
    angles: usize,
    summary: Vec<Value>,
}

impl Ctx<'_> {
    fn amoeba(&mut self, name: &str, p: &LaurentPolynomial) -> CliResult<()> {
        let t = Instant::now();
        let c = p.to_complex();
        write_output(
            &self.dir.join(format!("{name}.json")),
            io::to_pretty(&io::polynomial_to_json(p)).as_bytes(),
        )?;
        let w = amoeba::default_window(&c)?.with_resolution(self.res).with_angles(self.angles);
        let raster = amoeba::rasterize_amoeba(&c, &w, amoeba::DEFAULT_DILATION)?;
        let mut comps = amoeba::complement_components(&raster);
        amoeba::assign_orders(&c, &mut comps);
        write_output(&self.dir.join(format!("{name}-amoeba.ppm")), &io::amoeba_ppm(&raster, &comps))?;
        let np = c.newton_polytope()?;
        let report = amoeba::report_from_components(&c, &np, &comps);
        write_output(
            &self.dir.join(format!("{name}-report.json")),
            io::to_pretty(&io::report_to_json(&report)).as_bytes(),
        )?;
        println!(
            "{name}: {} components, {} lattice points, {} ({:.1}s)",
            report.component_count(),
            report.lattice_points,
            report.verdict.as_str(),
            t.elapsed().as_secs_f64()
        );
        self.summary.push(json!({
            "name": name,
            "components": report.component_count(),
            "lattice_points": report.lattice_points,
            "verdict": report.verdict.as_str(),
        }));
        Ok(())
    }

    fn wca(&mut self, name: &str, p: &ComplexPolynomial, weighted: bool) -> CliResult<()> {
        let res = self.res.min(200);
        let raster = moment::wca_raster(p, res, self.angles.min(256), weighted)?;
        let comps = moment::wca_components(p, &raster, weighted);
        write_output(&self.dir.join(format!("{name}.ppm")), &io::wca_ppm(&raster, &comps))?;
        // thin gaps can split into several raster regions of the same order
        let regions = comps.iter().filter(|c| c.bounded).count();
        let bounded: BTreeSet<_> = comps.iter().filter(|c| c.bounded).filter_map(|c| c.order.clone()).collect();
        println!("{name}: bounded gap orders {bounded:?} in {regions} regions");
        self.summary.push(json!({ "name": name, "bounded_gap_orders": bounded, "bounded_regions": regions }));
        Ok(())
    }

    fn deform(&mut self, name: &str, p: &ComplexPolynomial, term: &[i64], eps: &[f64]) -> CliResult<()> {
        let steps = moment::deformation_sweep(p, term, eps, 1.0, self.res.min(96), self.angles.min(256))?;
        let mut csv = String::from("eps,area_pixels,area_fraction,u,v\n");
        for s in &steps {
            let (u, v) = s.representative.map_or((String::new(), String::new()), |r| (r[0].to_string(), r[1].to_string()));
            csv.push_str(&format!("{},{},{:e},{u},{v}\n", s.eps, s.area_pixels, s.area_fraction));
        }
        write_output(&self.dir.join(format!("{name}.csv")), csv.as_bytes())?;
        println!("{name}: areas {:?}", steps.iter().map(|s| s.area_pixels).collect::<Vec<_>>());
        Ok(())
    }
}

pub fn run(dir: &Path, res: usize, angles: usize) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    LogWindow::square(1.0).with_resolution(res).with_angles(angles).validate()?;
    let mut ctx = Ctx {
        dir,
        res,
        angles,
        summary: Vec::new(),
    };

    // zeros of 2F1(-12, b; c; x) on a coarse version of the parameter grid
    let range = Progression {
        start: Rational::new(1.into(), 10.into()),
        step: Rational::new(1.into(), 20.into()),
        count: 79,
    };
    let aster = families::aster_scatter(-12, &range, &range);
    write_output(&dir.join("aster.csv"), io::aster_csv(&aster).as_bytes())?;
    let xy: Vec<[f64; 2]> = aster.iter().map(|p| [p.root.re, p.root.im]).collect();
    write_output(&dir.join("aster.ppm"), &io::scatter_ppm(&xy, 600))?;
    println!("aster: {} roots", aster.len());

    let small = expr("x + y + 6xy + x^2y^2")?;
    ctx.amoeba("horn-example", &small)?;
    ctx.wca("horn-example-compactified", &small.to_complex(), false)?;

    let vt = families::biorthogonal_vtilde(&[6, 10])?;
    ctx.amoeba("vtilde-6-10", &vt)?;

    let hirzebruch = expr("3x + 12xy + 2x^2y + 2y^2 + 3xy^2")?;
    ctx.amoeba("hirzebruch", &hirzebruch)?;
    let hc = hirzebruch.to_complex();
    ctx.wca("hirzebruch-compactified", &hc, false)?;
    ctx.wca("hirzebruch-weighted-r6", &moment::hadamard_power_complex(&hc, 6.0)?, true)?;
    ctx.deform("hirzebruch-deformation", &hc, &[1, 1], &[0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 11.0])?;

    let f1 = families::appell_f1(&F1Parameters::from_ints(-5, -4, -4, 3))?;
    ctx.amoeba("appell-f1-pentagon", &f1)?;
    let f1t = families::appell_f1(&F1Parameters::from_ints(-4, 5, -7, 9))?;
    ctx.amoeba("appell-f1-triangle", &f1t)?;

    let phi0 = OreSatoCoefficient::new(
        2,
        vec![gamma([0, 1], 1, true), gamma([6, -3], 1, true), gamma([-6, -2], 31, true)],
    )?;
    ctx.amoeba("p0", &series(&phi0, [0, 0], [6, 8])?)?;

    let phi1 = OreSatoCoefficient::new(
        2,
        vec![
            gamma([1, 0], -6, false),
            gamma([1, 1], -10, false),
            gamma([0, 1], -6, false),
            gamma([-1, 1], -4, false),
            gamma([-1, 0], 0, false),
            gamma([-1, -1], 2, false),
            gamma([0, -1], 0, false),
            gamma([1, -1], -4, false),
        ],
    )?;
    let p1 = series(&hypergeometric::reflect_to_reciprocal(&phi1), [0, 0], [8, 8])?;
    ctx.amoeba("p1", &p1)?;

    let phi2 = OreSatoCoefficient::new(
        2,
        vec![gamma([1, 2], -5, false), gamma([-2, -1], -4, false), gamma([-1, -5], 1, false)],
    )?;
    // support of the published listing, which carries an extra factor x^4
    let p2 = series(&hypergeometric::reflect_to_reciprocal(&phi2), [-4, 0], [5, 4])?.shift(&[4, 0]);
    ctx.amoeba("p2", &p2)?;

    let p3 = expr("240x^2 + 3y + 240xy + 1080x^2y + 30xy^2 + 180x^2y^2 + 36x^3y^2 + 2x^2y^3")?;
    ctx.amoeba("p3", &p3)?;
    let p3c = p3.to_complex();
    ctx.wca("p3-compactified", &p3c, false)?;
    ctx.wca("p3-weighted-r6", &moment::hadamard_power_complex(&p3c, 6.0)?, true)?;
    ctx.deform("p3-deformation", &p3c, &[2, 2], &[0.0, 10.0, 20.0, 30.0, 35.0, 40.0])?;
    let w = amoeba::default_window(&p3c)?.with_resolution(res.min(200)).with_angles(angles.min(256));
    let clouds = moment::skeleton_approximation(&p3c, &[1.0, 2.0, 4.0, 6.0], &w)?;
    write_output(&dir.join("p3-skeleton.csv"), io::clouds_csv(&clouds).as_bytes())?;

    write_output(
        &dir.join("summary.json"),
        io::to_pretty(&Value::Array(std::mem::take(&mut ctx.summary))).as_bytes(),
    )?;
    Ok(())
}
