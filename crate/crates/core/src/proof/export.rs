use std::fmt::Write;

use super::{NodeId, ProofTree};

struct Block {
    lines: Vec<String>,
    width: usize,
}

fn pad(s: &str, left: usize, width: usize) -> String {
    let n = s.chars().count();
    format!("{}{}{}", " ".repeat(left), s, " ".repeat(width.saturating_sub(left + n)))
}

fn beside(blocks: Vec<Block>, gap: usize) -> Block {
    let height = blocks.iter().map(|b| b.lines.len()).max().unwrap_or(0);
    let width = blocks.iter().map(|b| b.width).sum::<usize>() + gap * blocks.len().saturating_sub(1);
    let mut lines = vec![String::new(); height];
    for (i, b) in blocks.iter().enumerate() {
        let skip = height - b.lines.len();
        for (row, line) in lines.iter_mut().enumerate() {
            if i > 0 {
                line.push_str(&" ".repeat(gap));
            }
            match row.checked_sub(skip) {
                Some(r) => line.push_str(&b.lines[r]),
                None => line.push_str(&" ".repeat(b.width)),
            }
        }
    }
    Block { lines, width }
}

fn text_block(t: &ProofTree, id: NodeId) -> Block {
    let n = t.node(id).expect("ids in the tree resolve");
    let concl = n.sequent.to_string();
    let cw = concl.chars().count();
    let Some(rule) = n.rule else {
        return Block { lines: vec![concl], width: cw };
    };
    let top = beside(n.children.iter().map(|&c| text_block(t, c)).collect(), 3);
    let line_w = top.width.max(cw);
    let label = format!(" {rule}");
    let width = line_w + label.len();
    let mut lines: Vec<String> = top.lines.iter().map(|l| pad(l, (line_w - top.width) / 2, width)).collect();
    lines.push(pad(&format!("{}{label}", "-".repeat(line_w)), 0, width));
    lines.push(pad(&concl, (line_w - cw) / 2, width));
    Block { lines, width }
}

/// Renders the tree with premisses above a rule line and the conclusion
/// below it, the rule name to the right of the line.
pub fn export_text(t: &ProofTree) -> String {
    let b = text_block(t, t.root_id());
    let mut out = String::new();
    for l in b.lines {
        out.push_str(l.trim_end());
        out.push('\n');
    }
    out
}

const CHAR_W: u32 = 8;
const BOX_H: u32 = 22;
const PAD: u32 = 6;
const GAP: u32 = 24;
const ROW: u32 = BOX_H + 18;
const MARGIN: u32 = 10;

/// One sequent's box in the SVG layout, in pixels from the top left.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeBox {
    pub id: NodeId,
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
    pub text: String,
    pub open: bool,
    /// Rule line above the box: left end, right end and label.
    pub rule: Option<(u32, u32, String)>,
}

impl NodeBox {
    pub fn overlaps(&self, o: &NodeBox) -> bool {
        self.x < o.x + o.w && o.x < self.x + self.w && self.y < o.y + o.h && o.y < self.y + self.h
    }
}

struct Placed {
    width: u32,
    depth: u32,
    boxes: Vec<(NodeBox, u32)>,
}

fn place(t: &ProofTree, id: NodeId) -> Placed {
    let n = t.node(id).expect("ids in the tree resolve");
    let text = n.sequent.to_string();
    let w = text.chars().count() as u32 * CHAR_W + 2 * PAD;
    let kids: Vec<Placed> = n.children.iter().map(|&c| place(t, c)).collect();
    let tw = kids.iter().map(|k| k.width).sum::<u32>() + GAP * (kids.len() as u32).saturating_sub(1);
    let line_w = tw.max(w);
    let label_w = n.rule.map_or(0, |r| r.as_str().len() as u32 * CHAR_W + 2 * PAD);
    let mut boxes = Vec::new();
    let mut x = (line_w - tw) / 2;
    let mut depth = 0;
    for k in kids {
        depth = depth.max(k.depth + 1);
        for (mut b, level) in k.boxes {
            b.x += x;
            if let Some((l, r, _)) = &mut b.rule {
                *l += x;
                *r += x;
            }
            boxes.push((b, level + 1));
        }
        x += k.width + GAP;
    }
    let rule = n.rule.map(|r| (0, line_w, r.to_string()));
    boxes.push((NodeBox { id, x: (line_w - w) / 2, y: 0, w, h: BOX_H, text, open: n.is_open(), rule }, 0));
    Placed { width: line_w + label_w, depth, boxes }
}

/// Box positions for [`export_svg`], root last.
pub fn svg_layout(t: &ProofTree) -> (u32, u32, Vec<NodeBox>) {
    let p = place(t, t.root_id());
    let width = p.width + 2 * MARGIN;
    let height = (p.depth + 1) * ROW + 2 * MARGIN;
    let boxes = p
        .boxes
        .into_iter()
        .map(|(mut b, level)| {
            b.x += MARGIN;
            b.y = MARGIN + (p.depth - level) * ROW + (ROW - BOX_H);
            if let Some((l, r, _)) = &mut b.rule {
                *l += MARGIN;
                *r += MARGIN;
            }
            b
        })
        .collect();
    (width, height, boxes)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn export_svg(t: &ProofTree) -> String {
    let (width, height, boxes) = svg_layout(t);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="13">"#
    );
    for b in &boxes {
        let stroke = if b.open { r##"stroke="#c33" stroke-dasharray="4 2""## } else { r##"stroke="#555""## };
        let _ = writeln!(out, r#"<g id="node-{}">"#, b.id);
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" rx="3" fill="white" {stroke}/>"#,
            b.x, b.y, b.w, b.h
        );
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, b.x + PAD, b.y + BOX_H - 7, escape(&b.text));
        if let Some((l, r, label)) = &b.rule {
            let y = b.y - 8;
            let _ = writeln!(out, r#"<line x1="{l}" y1="{y}" x2="{r}" y2="{y}" stroke="black"/>"#);
            let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11">{label}</text>"#, r + PAD, y + 4);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{RuleId, Selection};
    use crate::proof::new_proof;
    use crate::sequent::parse_sequent;

    #[test]
    fn single_node_is_just_the_sequent() {
        let t = new_proof(parse_sequent("P ==> P").unwrap());
        assert_eq!(export_text(&t), "P ==> P\n");
    }

    #[test]
    fn two_premiss_layout() {
        let t = new_proof(parse_sequent("==> P & Q").unwrap()).apply_at(0, RuleId::AndR, Selection::right(0)).unwrap();
        assert_eq!(export_text(&t), "==> P   ==> Q\n------------- AndR\n  ==> P & Q\n");
    }

    #[test]
    fn axioms_get_a_line() {
        let t = new_proof(parse_sequent("P ==> P").unwrap())
            .apply_at(0, RuleId::AxiomId, Selection::left(0).with_partner(0))
            .unwrap();
        assert_eq!(export_text(&t), "------- AxiomId\nP ==> P\n");
    }

    #[test]
    fn svg_boxes_are_disjoint() {
        let t = new_proof(parse_sequent("P, Q ==> (P & Q) & (Q | P)").unwrap());
        let t = t.apply_at(0, RuleId::AndR, Selection::right(0)).unwrap();
        let [a, b] = t.open_goals()[..] else { panic!() };
        let t = t.apply_at(a, RuleId::AndR, Selection::right(0)).unwrap();
        let t = t.apply_at(b, RuleId::OrR, Selection::right(0)).unwrap();
        let (w, h, boxes) = svg_layout(&t);
        assert_eq!(boxes.len(), t.len());
        for (i, x) in boxes.iter().enumerate() {
            assert!(x.x + x.w <= w && x.y + x.h <= h);
            for y in &boxes[i + 1..] {
                assert!(!x.overlaps(y), "{x:?} {y:?}");
            }
        }
        let svg = export_svg(&t);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect").count(), t.len());
        assert!(svg.contains("P &amp; Q"));
    }
}
