use std::fs;

use biobj_bench::harness::{
    plot_front, run_experiment, run_optimizer, summarize, write_plot, ExperimentConfig, OptimizerKind, RunRecord,
    TracePoint, DEFAULT_STEP_SIGMA,
};
use biobj_bench::indicator::{hypervolume, normalize, ArchiveEntry, ObjectivePair};
use biobj_bench::suite::{group_of, instantiate_problem, ProblemId};
use biobj_bench::Error;

const EVOLVER: OptimizerKind = OptimizerKind::ArchiveEvolver { step_sigma: DEFAULT_STEP_SIGMA };

fn small_config(out: &std::path::Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(out);
    cfg.filter.functions = Some([1, 2].into());
    cfg.filter.dims = Some([2, 3].into());
    cfg.filter.instances = Some([1].into());
    cfg.optimizers = vec![OptimizerKind::RandomSearch, EVOLVER];
    cfg.seeds = vec![1, 2, 3];
    cfg.budget_multiplier = 50;
    cfg
}

#[test]
fn experiment_writes_one_record_per_cell() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_experiment(&small_config(tmp.path())).unwrap();
    assert_eq!(out.records.len(), 24);
    let manifest = fs::read_to_string(&out.manifest).unwrap();
    assert_eq!(manifest.lines().filter(|l| !l.starts_with('#')).count(), 4);
    for path in &out.records {
        let rec = RunRecord::load(path).unwrap();
        assert_eq!(rec.budget, 50 * rec.problem.dim as u64);
        assert_eq!(rec.evaluations, rec.budget);
        let pts: Vec<ObjectivePair> =
            rec.archive.iter().map(|e| normalize(&e.y, &rec.ideal, &rec.nadir).unwrap()).collect();
        assert!((hypervolume(&pts, &ObjectivePair::new(1.0, 1.0)) - rec.final_hv).abs() < 1e-12);
    }
}

#[test]
fn rerun_into_same_directory_is_idempotent() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(tmp.path());
    let first = run_experiment(&cfg).unwrap();
    let before: Vec<Vec<u8>> = first.records.iter().map(|p| fs::read(p).unwrap()).collect();
    let second = run_experiment(&cfg).unwrap();
    assert_eq!(first.records, second.records);
    let after: Vec<Vec<u8>> = second.records.iter().map(|p| fs::read(p).unwrap()).collect();
    assert_eq!(before, after);
    let stray = fs::read_dir(tmp.path().join("records")).unwrap().filter(|e| {
        e.as_ref().unwrap().path().extension().is_none_or(|x| x != "txt")
    });
    assert_eq!(stray.count(), 0);
}

#[test]
fn invalid_configurations_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small_config(tmp.path());
    cfg.budget_multiplier = 0;
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));

    let mut cfg = small_config(tmp.path());
    cfg.seeds.clear();
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));

    let mut cfg = small_config(tmp.path());
    cfg.filter.dims = Some([4].into());
    assert!(matches!(run_experiment(&cfg), Err(Error::NonStandardDimension(4))));
    cfg.allow_non_standard_dims = true;
    cfg.seeds = vec![1];
    assert_eq!(run_experiment(&cfg).unwrap().records.len(), 4);

    let mut cfg = small_config(tmp.path());
    cfg.filter.functions = Some([56].into());
    assert!(matches!(run_experiment(&cfg), Err(Error::PairIndexOutOfRange(56))));

    let mut cfg = small_config(tmp.path());
    cfg.optimizers = vec![OptimizerKind::ArchiveEvolver { step_sigma: 0.0 }];
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
}

#[test]
fn summary_of_single_record() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small_config(tmp.path());
    cfg.filter.functions = Some([1].into());
    cfg.filter.dims = Some([2].into());
    cfg.optimizers = vec![OptimizerKind::RandomSearch];
    cfg.seeds = vec![7];
    let out = run_experiment(&cfg).unwrap();
    let hv = RunRecord::load(&out.records[0]).unwrap().final_hv;
    let s = summarize(tmp.path()).unwrap();
    assert!(s.errors.is_empty());
    assert_eq!(s.rows.len(), 1);
    let r = &s.rows[0];
    assert_eq!((r.runs, r.median, r.q1, r.q3, r.iqr()), (1, hv, hv, hv, 0.0));
    assert_eq!(fs::read_to_string(tmp.path().join("summary.tsv")).unwrap(), s.to_tsv());
}

#[test]
fn summary_of_empty_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let s = summarize(tmp.path()).unwrap();
    assert!(s.rows.is_empty() && s.errors.is_empty());
    assert_eq!(s.to_tsv().lines().count(), 1);
}

#[test]
fn summary_skips_corrupt_records() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_experiment(&small_config(tmp.path())).unwrap();
    fs::write(tmp.path().join("records").join("broken.txt"), "# biobj run record\nformat: 1\nproblem: nonsense\n").unwrap();
    let truncated = fs::read_to_string(&out.records[0]).unwrap();
    fs::write(&out.records[0], &truncated[..truncated.len() / 3]).unwrap();
    let s = summarize(tmp.path()).unwrap();
    assert_eq!(s.errors.len(), 2);
    assert_eq!(s.rows.iter().map(|r| r.runs).sum::<usize>(), 23);
}

#[test]
fn summary_covers_all_groups() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::new(tmp.path());
    cfg.filter.dims = Some([2].into());
    cfg.filter.instances = Some([1].into());
    cfg.seeds = vec![1];
    cfg.budget_multiplier = 10;
    run_experiment(&cfg).unwrap();
    let s = summarize(tmp.path()).unwrap();
    assert_eq!(s.rows.len(), 15);
    for r in &s.rows {
        let expected = (1..=55).filter(|&k| group_of(k).unwrap() == r.group).count();
        assert_eq!(r.runs, expected, "{}", r.group);
        assert!(r.q1 <= r.median && r.median <= r.q3);
    }
}

fn three_point_record() -> RunRecord {
    let p = instantiate_problem(ProblemId::new(2, 2, 1)).unwrap();
    let (ideal, nadir) = (p.ideal(), p.nadir());
    let mix = |t: f64| ObjectivePair::new(ideal.a + t * (nadir.a - ideal.a), ideal.b + (1.0 - t) * (nadir.b - ideal.b));
    RunRecord {
        problem: p.id(),
        instance_ids: p.instance_ids(),
        function_names: (p.alpha().function().name().into(), p.beta().function().name().into()),
        group: p.group(),
        ideal,
        nadir,
        optimizer: "random-search".into(),
        step_sigma: None,
        seed: 1,
        budget: 3,
        evaluations: 3,
        final_hv: 0.5,
        trace: vec![TracePoint { eval_index: 1, hv: 0.2 }, TracePoint { eval_index: 3, hv: 0.5 }],
        archive: [0.2, 0.5, 0.8].iter().map(|&t| ArchiveEntry { x: vec![t, -t], y: mix(t) }).collect(),
    }
}

#[test]
fn plot_marks_points_and_reference_points() {
    let rec = three_point_record();
    let svg = plot_front(&rec).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches(r#"<circle class="point""#).count(), 3);
    assert_eq!(svg.matches(r#"class="ideal""#).count(), 1);
    assert_eq!(svg.matches(r#"class="nadir""#).count(), 1);
    assert_eq!(svg.matches("<!-- point ").count(), 3);
    assert!(svg.contains("first objective: Sphere"));
    assert!(svg.contains("second objective: Ellipsoid separable"));
    assert_eq!(svg, plot_front(&rec).unwrap());

    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("front.svg");
    write_plot(&rec, &path).unwrap();
    assert_eq!(fs::read_to_string(&path).unwrap(), svg);
}

#[test]
fn plot_of_empty_archive_fails() {
    let mut rec = three_point_record();
    rec.archive.clear();
    assert!(matches!(plot_front(&rec), Err(Error::EmptyArchive)));
}

#[test]
fn evolver_trace_on_hardest_pair() {
    let mut p = instantiate_problem(ProblemId::new(55, 5, 1)).unwrap();
    let rec = run_optimizer(&mut p, EVOLVER, 5000, 3).unwrap();
    rec.validate().unwrap();
    assert_eq!(p.eval_count(), 5000);
    assert!(!rec.trace.is_empty());
    assert!(rec.trace.windows(2).all(|w| w[0].eval_index < w[1].eval_index && w[0].hv <= w[1].hv));
    assert_eq!(rec.trace.last().unwrap().hv, rec.final_hv);
    assert!(rec.archive.iter().all(|e| e.x.iter().all(|v| v.abs() <= 100.0)));
}
