//! GPX and CSV route files.
//!
//! Points are stored as `(lon, lat)`. Writers emit 9 decimal places.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polyline};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteFormat {
    Gpx,
    Csv,
}

impl RouteFormat {
    /// Picks a format from the file extension, defaulting to GPX.
    pub fn from_path(path: &Path) -> RouteFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => RouteFormat::Csv,
            _ => RouteFormat::Gpx,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteFile {
    pub path: PathBuf,
    pub format: RouteFormat,
    pub polyline: Polyline<f64>,
}

impl RouteFile {
    pub fn point_count(&self) -> usize {
        self.polyline.len()
    }
}

pub fn load_route(path: &Path) -> Result<RouteFile> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let format = RouteFormat::from_path(path);
    let polyline = match format {
        RouteFormat::Gpx => parse_gpx(&bytes),
        RouteFormat::Csv => parse_csv(&bytes),
    }
    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(RouteFile { path: path.to_path_buf(), format, polyline })
}

fn utf8(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))
}

/// Reads the first `<trk>`, concatenating its segments in document order.
pub fn parse_gpx(bytes: &[u8]) -> Result<Polyline<f64>> {
    let text = utf8(bytes)?;
    let doc = roxmltree::Document::parse(text).map_err(|e| Error::Parse(format!("malformed XML: {e}")))?;
    let line_of = |node: roxmltree::Node| doc.text_pos_at(node.range().start).row;

    let track = doc.descendants().find(|n| n.has_tag_name("trk"));
    let mut points = Vec::new();
    for pt in track
        .iter()
        .flat_map(|t| t.children().filter(|n| n.has_tag_name("trkseg")))
        .flat_map(|seg| seg.children().filter(|n| n.has_tag_name("trkpt")))
    {
        let coord = |name: &str| -> Result<f64> {
            let raw = pt
                .attribute(name)
                .ok_or_else(|| Error::Parse(format!("line {}: trkpt missing '{name}'", line_of(pt))))?;
            raw.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse(format!("line {}: invalid {name} '{raw}'", line_of(pt))))
        };
        points.push(Point::new(coord("lon")?, coord("lat")?));
    }
    if points.is_empty() {
        let line = track.map_or(1, line_of);
        return Err(Error::Parse(format!("line {line}: no track points")));
    }
    Ok(Polyline::new(points))
}

/// Reads `lon,lat` rows. A first row that does not parse as numbers is taken
/// as a header.
pub fn parse_csv(bytes: &[u8]) -> Result<Polyline<f64>> {
    let text = utf8(bytes)?;
    let mut points = Vec::new();
    let mut seen_row = false;
    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = match fields.as_slice() {
            [lon, lat, ..] => lon.parse::<f64>().ok().zip(lat.parse::<f64>().ok()),
            _ => None,
        };
        let first = !seen_row;
        seen_row = true;
        match parsed {
            Some((lon, lat)) if lon.is_finite() && lat.is_finite() => points.push(Point::new(lon, lat)),
            None if first => continue,
            _ => return Err(Error::Parse(format!("row {row}: expected numeric lon,lat, got '{line}'"))),
        }
    }
    Ok(Polyline::new(points))
}

/// One track, one segment.
pub fn write_gpx(route: &Polyline<f64>, name: &str) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<gpx version=\"1.1\" creator=\"hoboroute\" xmlns=\"http://www.topografix.com/GPX/1/1\">\n");
    out.push_str("  <trk>\n");
    let _ = writeln!(out, "    <name>{}</name>", escape_xml(name));
    out.push_str("    <trkseg>\n");
    for p in &route.points {
        let _ = writeln!(out, "      <trkpt lat=\"{:.9}\" lon=\"{:.9}\"/>", p.y, p.x);
    }
    out.push_str("    </trkseg>\n  </trk>\n</gpx>\n");
    out
}

pub fn write_csv(route: &Polyline<f64>) -> String {
    let mut out = String::from("lon,lat\n");
    for p in &route.points {
        let _ = writeln!(out, "{:.9},{:.9}", p.x, p.y);
    }
    out
}

pub fn write_route(route: &Polyline<f64>, format: RouteFormat, name: &str) -> String {
    match format {
        RouteFormat::Gpx => write_gpx(route, name),
        RouteFormat::Csv => write_csv(route),
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Points of `route` at `indices`, in order.
pub fn select_points(route: &Polyline<f64>, indices: &[usize]) -> Polyline<f64> {
    Polyline::new(indices.iter().map(|&i| route.points[i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coords(p: &Polyline<f64>) -> Vec<(f64, f64)> {
        p.points.iter().map(|p| (p.x, p.y)).collect()
    }

    fn gpx(body: &str) -> String {
        format!("<?xml version=\"1.0\"?>\n<gpx version=\"1.1\" xmlns=\"http://www.topografix.com/GPX/1/1\">\n{body}\n</gpx>")
    }

    #[test]
    fn gpx_basic() {
        let doc = gpx(r#"<trk><trkseg>
            <trkpt lat="0" lon="0"><ele>12</ele></trkpt>
            <trkpt lat="1" lon="0"/>
            <trkpt lat="2" lon="0"><time>2020-01-01T00:00:00Z</time></trkpt>
        </trkseg></trk>"#);
        assert_eq!(coords(&parse_gpx(doc.as_bytes()).unwrap()), vec![(0.0, 0.0), (0.0, 1.0), (0.0, 2.0)]);
    }

    #[test]
    fn gpx_concatenates_segments_of_first_track() {
        let doc = gpx(r#"<trk>
            <trkseg><trkpt lat="0" lon="0"/><trkpt lat="0" lon="1"/></trkseg>
            <trkseg><trkpt lat="0" lon="2"/><trkpt lat="0" lon="3"/><trkpt lat="0" lon="4"/></trkseg>
        </trk>
        <trk><trkseg><trkpt lat="9" lon="9"/></trkseg></trk>"#);
        let p = parse_gpx(doc.as_bytes()).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.points[4].x, 4.0);
    }

    #[test]
    fn gpx_errors() {
        let empty = gpx("<trk><trkseg></trkseg></trk>");
        let e = parse_gpx(empty.as_bytes()).unwrap_err().to_string();
        assert!(e.contains("no track points"), "{e}");
        assert!(e.contains("line 3"), "{e}");

        let e = parse_gpx(b"<gpx>\n<trk>\n</gpx>").unwrap_err().to_string();
        assert!(e.contains("malformed XML"), "{e}");
        assert!(e.contains("3:"), "{e}");

        let bad = gpx("<trk><trkseg>\n<trkpt lat=\"x\" lon=\"0\"/></trkseg></trk>");
        let e = parse_gpx(bad.as_bytes()).unwrap_err().to_string();
        assert!(e.contains("line 4") && e.contains("lat"), "{e}");
    }

    #[test]
    fn csv_examples() {
        assert_eq!(coords(&parse_csv(b"0,0\n1,0\n").unwrap()), vec![(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(coords(&parse_csv(b"lon,lat\n0,0\n").unwrap()), vec![(0.0, 0.0)]);
        assert_eq!(coords(&parse_csv(b"\n0,0\n\n 1 , 2 \n").unwrap()), vec![(0.0, 0.0), (1.0, 2.0)]);
        let e = parse_csv(b"a,b\nc,d\n").unwrap_err().to_string();
        assert!(e.contains("row 2"), "{e}");
        let e = parse_csv(b"0,0\n1\n").unwrap_err().to_string();
        assert!(e.contains("row 2"), "{e}");
    }

    #[test]
    fn gpx_output_structure() {
        let route: Polyline<f64> = [(135.5, 33.25), (135.6, 33.3)].into_iter().collect();
        let text = write_gpx(&route, "a & b");
        let doc = roxmltree::Document::parse(&text).unwrap();
        let root = doc.root_element();
        assert_eq!(root.attribute("version"), Some("1.1"));
        assert_eq!(root.children().filter(|n| n.has_tag_name("trk")).count(), 1);
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("trkseg")).count(), 1);
        assert!(text.contains(r#"lat="33.250000000" lon="135.500000000""#), "{text}");
    }

    fn round9(v: f64) -> f64 {
        format!("{v:.9}").parse().unwrap()
    }

    proptest! {
        #[test]
        fn round_trips_at_nine_decimals(pts in prop::collection::vec((-180.0f64..180.0, -90.0f64..90.0), 1..30)) {
            let route: Polyline<f64> = pts.iter().copied().collect();
            let expected: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (round9(x), round9(y))).collect();
            prop_assert_eq!(coords(&parse_gpx(write_gpx(&route, "r").as_bytes()).unwrap()), expected.clone());
            prop_assert_eq!(coords(&parse_csv(write_csv(&route).as_bytes()).unwrap()), expected);
        }
    }
}
