use cosurf::formats::{GroupoidSpec, SeriesFile};
use cosurf::random;
use cosurf_core::groupoid::make_interval_groupoid;

#[test]
fn series_json_round_trip() {
    let spec: GroupoidSpec = "interval:0..4".parse().unwrap();
    let g = make_interval_groupoid(0, 4).unwrap();
    let a = random::series(&mut random::rng(3), &g, 4, 2, 0.5);
    let file = SeriesFile::from_series(&spec, &a);
    let text = serde_json::to_string_pretty(&file).unwrap();
    let back: SeriesFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_series(&g).unwrap(), a);
}

#[test]
fn malformed_series_files_are_rejected() {
    let g = make_interval_groupoid(0, 4).unwrap();
    let bad_index = r#"{"groupoid":"interval:0..4","trunc":2,"size":1,"terms":[{"index":"[3,9]","coeff":[["1"]]}]}"#;
    let bad_size = r#"{"groupoid":"interval:0..4","trunc":2,"size":2,"terms":[{"index":"[0,1]","coeff":[["1"]]}]}"#;
    let bad_number = r#"{"groupoid":"interval:0..4","trunc":2,"size":1,"terms":[{"index":"[0,1]","coeff":[["x"]]}]}"#;
    for text in [bad_index, bad_size, bad_number] {
        let file: SeriesFile = serde_json::from_str(text).unwrap();
        assert!(file.to_series(&g).is_err(), "{text}");
    }
    let extra = r#"{"groupoid":"nat","trunc":2,"size":1,"terms":[],"note":1}"#;
    assert!(serde_json::from_str::<SeriesFile>(extra).is_err());
}
