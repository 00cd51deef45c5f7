use super::chart::GradedChart;
use crate::mackey::Classification;

fn width(s: &str) -> usize {
    s.chars().filter(|c| !('\u{300}'..='\u{36f}').contains(c)).count()
}

fn symbol(c: &Classification) -> String {
    if c.name == "0" {
        ".".into()
    } else if c.is_named() {
        c.symbol().to_string()
    } else {
        "?".into()
    }
}

fn pad(s: &str, w: usize) -> String {
    let mut out = String::new();
    for _ in width(s)..w {
        out.push(' ');
    }
    out.push_str(s);
    out
}

/// Grid with `p` to the right and `q` upwards; zero cells print as dots.
pub fn render_ascii(ch: &GradedChart) -> String {
    let w = ch.window;
    let mut colw = 3;
    for (_, c) in ch.cells.values() {
        colw = colw.max(width(&symbol(c)));
    }
    let mut out = format!("H{}  window p {}..{}, q {}..{}\n", ch.coeff_name, w.pmin, w.pmax, w.qmin, w.qmax);
    for q in (w.qmin..=w.qmax).rev() {
        out.push_str(&pad(&format!("q={q}"), 6));
        for p in w.pmin..=w.pmax {
            out.push(' ');
            let s = ch.cells.get(&(p, q)).map(|(_, c)| symbol(c)).unwrap_or_else(|| " ".into());
            out.push_str(&pad(&s, colw));
        }
        out.push('\n');
    }
    out.push_str(&pad("p=", 6));
    for p in w.pmin..=w.pmax {
        out.push(' ');
        out.push_str(&pad(&p.to_string(), colw));
    }
    out.push('\n');
    out
}

/// Minimal standalone SVG of the same grid.
pub fn render_svg(ch: &GradedChart) -> String {
    let w = ch.window;
    let cell = 40;
    let cols = (w.pmax - w.pmin + 2) as usize;
    let rows = (w.qmax - w.qmin + 2) as usize;
    let (wd, ht) = (cols * cell, rows * cell);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{wd}\" height=\"{ht}\" font-family=\"serif\" font-size=\"14\">\n"
    );
    for q in (w.qmin..=w.qmax).rev() {
        let y = ((w.qmax - q) as usize + 1) * cell - cell / 3;
        out.push_str(&format!("<text x=\"4\" y=\"{y}\">{q}</text>\n"));
        for p in w.pmin..=w.pmax {
            let x = ((p - w.pmin) as usize + 1) * cell + 4;
            if let Some((_, c)) = ch.cells.get(&(p, q)) {
                if c.name != "0" {
                    out.push_str(&format!("<text x=\"{x}\" y=\"{y}\">{}</text>\n", xml_escape(&symbol(c))));
                }
            }
        }
    }
    let y = rows * cell - cell / 3;
    for p in w.pmin..=w.pmax {
        let x = ((p - w.pmin) as usize + 1) * cell + 4;
        out.push_str(&format!("<text x=\"{x}\" y=\"{y}\">{p}</text>\n"));
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bredon::{chart, Engine, Window};
    use crate::mackey::construct_named;

    #[test]
    fn ascii_is_stable() {
        let e = Engine::new(&construct_named("Z").unwrap());
        let c = chart(&e, "ℤ̲", Window::square(2));
        let a = render_ascii(&c);
        assert_eq!(a, render_ascii(&chart(&Engine::new(&construct_named("Z").unwrap()), "ℤ̲", Window::square(2))));
        assert!(a.contains("ℤ̲"));
        assert!(render_svg(&c).starts_with("<svg"));
    }
}
