use sideways::experiment::{relative_error, solve_pair, ExperimentConfig, Problem, SpaceSetup};
use sideways::solver::{field_to_time, Quadrature};

fn noiseless_errors(cfg: &ExperimentConfig, omega_max: f64) -> Vec<f64> {
    let setup = SpaceSetup::new(cfg).unwrap();
    let data = cfg.problem.boundary(setup.time);
    let sol = solve_pair(cfg, setup.space, &data, Some(omega_max)).unwrap();
    let field = field_to_time(&sol.field);
    setup
        .rows
        .iter()
        .zip(&setup.exact)
        .map(|(&j, exact)| relative_error(exact, field.row(j)).unwrap())
        .collect()
}

#[test]
fn noiseless_floor_of_the_polynomial_benchmark() {
    // Regression pins; the floor is set by the jump of the periodized data.
    let mut cfg = ExperimentConfig::new(0.4);
    cfg.x = vec![0.15, 0.5];
    let e = noiseless_errors(&cfg, 31.8755);
    assert!(e[0] < 0.095 && e[1] < 0.24, "{e:?}");
    assert!(e[0] > 0.05, "floor moved: {e:?}");
}

#[test]
fn periodic_benchmark_is_recovered_inside_the_band() {
    let mut cfg = ExperimentConfig::new(0.7);
    cfg.problem = Problem::Smooth;
    cfg.n_samples = 64;
    cfg.x = vec![0.15, 0.5, 1.0];
    let e = noiseless_errors(&cfg, 8.0);
    assert!(e.iter().all(|&v| v < 1e-6), "{e:?}");
}

#[test]
fn simpson_beats_trapezoid() {
    use sideways::solver::{picard_solve, PicardConfig, SpectralData};
    let mut cfg = ExperimentConfig::new(0.7);
    cfg.problem = Problem::Smooth;
    cfg.n_samples = 64;
    cfg.n_x = 40;
    cfg.x = vec![1.0];
    let setup = SpaceSetup::new(&cfg).unwrap();
    let data = SpectralData::from_boundary(&cfg.problem.boundary(setup.time));
    let order = cfg.order().unwrap();
    let err = |quadrature| {
        let pc = PicardConfig {
            quadrature,
            ..PicardConfig::default()
        };
        let sol = picard_solve(
            order,
            setup.space,
            &data,
            &cfg.problem.source(order),
            None,
            &pc,
        )
        .unwrap();
        let field = field_to_time(&sol.field);
        relative_error(&setup.exact[0], field.row(setup.rows[0])).unwrap()
    };
    let (s, t) = (err(Quadrature::Simpson), err(Quadrature::Trapezoid));
    assert!(s < t / 10.0, "simpson {s}, trapezoid {t}");
}
