use mock_theta::verify::{run_suite, self_test, CheckReport, Status, Suite};

#[test]
fn report_json_round_trip() {
    let mut reports = run_suite(Suite::Entry(3), None);
    reports.push(self_test(5));
    let s = serde_json::to_string(&reports).unwrap();
    let back: Vec<CheckReport> = serde_json::from_str(&s).unwrap();
    assert_eq!(back, reports);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    let last = v.as_array().unwrap().last().unwrap();
    assert_eq!(last["status"], "fail");
    assert_eq!(last["mismatch"]["exponent"], 5);
    assert_eq!(last["mismatch"]["lhs"].as_array().unwrap().len(), 8);
}

#[test]
fn prelim_at_order_sixty() {
    let reports = run_suite(Suite::Prelim, Some(60));
    assert!(reports.iter().all(|r| r.status == Status::Pass && r.order == 60));
}

#[test]
fn entry_four_passes() {
    assert!(run_suite(Suite::Entry(4), None).iter().all(CheckReport::as_expected));
}
