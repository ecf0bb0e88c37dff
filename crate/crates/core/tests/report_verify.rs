use nonsplit_core::build::run_pipeline;
use nonsplit_core::report::{reseal, Report};
use nonsplit_core::verify::{verify_report_str, verify_report_value};
use nonsplit_core::{Error, GroupRecipe, JobSpec};
use serde_json::Value;

fn report(job: &JobSpec) -> Report {
    let group = job.build_group().unwrap();
    Report::from_pipeline(job, &run_pipeline(&group, job.seed).unwrap()).unwrap()
}

fn value(job: &JobSpec) -> Value {
    serde_json::from_str(&report(job).to_json_string()).unwrap()
}

fn rejected_after(mut v: Value, edit: impl FnOnce(&mut Value)) -> Error {
    edit(&mut v);
    reseal(&mut v).unwrap();
    verify_report_value(&v).unwrap_err()
}

#[test]
fn fresh_reports_verify() {
    for job in [
        JobSpec::new(2, 2, 2),
        JobSpec::new(3, 1, 2),
        JobSpec::new(2, 2, 3),
        JobSpec::new(3, 2, 2),
        JobSpec::new(5, 1, 3),
        JobSpec::new(3, 1, 4).with_group(GroupRecipe::ZpxZp),
    ] {
        let text = report(&job).to_json_string();
        let v = verify_report_str(&text).unwrap_or_else(|e| panic!("{job:?}: {e}"));
        assert!(v.checks.len() >= 10, "{:?}", v.checks);
    }
}

#[test]
fn digest_binds_every_field() {
    let mut v = value(&JobSpec::new(2, 2, 2));
    v["obstruction"]["dim"] = Value::from(12);
    assert!(matches!(verify_report_value(&v), Err(Error::FailedCheck(_))));
}

#[test]
fn resealed_semantic_edits_are_caught() {
    let base = value(&JobSpec::new(2, 2, 2));
    let flip = |x: &mut Value| {
        let c = x.as_array_mut().unwrap();
        c[0] = Value::from((c[0].as_u64().unwrap() + 1) % 2);
    };
    type Edit = Box<dyn Fn(&mut Value)>;
    let cases: Vec<(&str, Edit)> = vec![
        ("certificate", Box::new(move |v: &mut Value| flip(&mut v["construction"]["certificate"]["y"][0]))),
        ("cocycle", Box::new(move |v: &mut Value| flip(&mut v["construction"]["cocycle"][1][0]))),
        ("witness", Box::new(move |v: &mut Value| flip(&mut v["witness"]["u"][0]))),
        ("v action", Box::new(move |v: &mut Value| flip(&mut v["construction"]["v_actions"][1]["entries"][0][2]))),
        ("element", Box::new(move |v: &mut Value| flip(&mut v["group"]["elements"][1]["entries"][0][0]))),
        ("dimension", Box::new(|v: &mut Value| v["obstruction"]["dim"] = Value::from(12))),
        ("lambda", Box::new(|v: &mut Value| v["quadratic"]["lambda"] = Value::from(vec![0, 0]))),
        ("class", Box::new(|v: &mut Value| v["construction"]["h1"]["class"] = Value::from(vec![vec![0, 0]; 2]))),
    ];
    for (name, edit) in cases {
        let err = rejected_after(base.clone(), |v| edit(v));
        assert!(matches!(err, Error::FailedCheck(_) | Error::CorruptReport(_)), "{name}: {err}");
    }
}
