//! Layout files: one solved layout with its derived quantities.
//!
//! Items are listed by id (1-based, as in the instance file); `order` gives
//! the placement order.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use wil_core::layout::{verify_circle_layout, verify_rect_layout};
use wil_core::{CircleItem, Layout, Orientation, Placed, Point, RectItem, RectPlacement};

use crate::instance::Kind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XY {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutItem {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub m: f64,
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutFile {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub envelope_radius: f64,
    pub mass_center: XY,
    pub imbalance: f64,
    pub fallbacks: usize,
    pub order: Vec<usize>,
    pub items: Vec<LayoutItem>,
}

pub enum Decoded {
    Circles(Vec<CircleItem>, Layout<Point>),
    Rects(Vec<RectItem>, Layout<RectPlacement>),
}

fn header<P>(kind: Kind, instance: Option<String>, layout: &Layout<P>) -> LayoutFile {
    LayoutFile {
        kind,
        instance,
        envelope_radius: layout.envelope_radius,
        mass_center: XY {
            x: layout.mass_center.x,
            y: layout.mass_center.y,
        },
        imbalance: layout.imbalance,
        fallbacks: layout.fallbacks,
        order: layout.placements.iter().map(|p| p.item + 1).collect(),
        items: Vec::with_capacity(layout.len()),
    }
}

impl LayoutFile {
    pub fn from_circles(instance: Option<String>, items: &[CircleItem], layout: &Layout<Point>) -> Self {
        let mut file = header(Kind::Circles, instance, layout);
        let mut placed: Vec<_> = layout.placements.clone();
        placed.sort_by_key(|p| p.item);
        file.items = placed
            .iter()
            .map(|p| LayoutItem {
                id: p.item + 1,
                r: Some(items[p.item].radius),
                a: None,
                b: None,
                m: items[p.item].mass,
                x: p.placement.x,
                y: p.placement.y,
                orientation: None,
            })
            .collect();
        file
    }

    pub fn from_rects(instance: Option<String>, items: &[RectItem], layout: &Layout<RectPlacement>) -> Self {
        let mut file = header(Kind::Rects, instance, layout);
        let mut placed: Vec<_> = layout.placements.clone();
        placed.sort_by_key(|p| p.item);
        file.items = placed
            .iter()
            .map(|p| LayoutItem {
                id: p.item + 1,
                r: None,
                a: Some(items[p.item].edge_a),
                b: Some(items[p.item].edge_b),
                m: items[p.item].mass,
                x: p.placement.center.x,
                y: p.placement.center.y,
                orientation: Some(p.placement.orientation.degrees()),
            })
            .collect();
        file
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("layout serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<LayoutFile> {
        serde_json::from_str(text).context("malformed layout")
    }

    pub fn load(path: &Path) -> Result<LayoutFile> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        LayoutFile::parse(&text).with_context(|| path.display().to_string())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_string_pretty()).with_context(|| format!("writing {}", path.display()))
    }

    /// Rebuilds items and layout, checking ids and field presence.
    pub fn decode(&self) -> Result<Decoded> {
        let n = self.items.len();
        let mut by_id: Vec<Option<&LayoutItem>> = vec![None; n];
        for it in &self.items {
            if it.id == 0 || it.id > n {
                bail!("item id {} out of range 1..={n}", it.id);
            }
            if by_id[it.id - 1].replace(it).is_some() {
                bail!("duplicate item id {}", it.id);
            }
        }
        let by_id: Vec<&LayoutItem> = by_id.into_iter().map(|x| x.expect("ids are 1..=n")).collect();
        if self.order.len() != n {
            bail!("order lists {} items, expected {n}", self.order.len());
        }
        let order = self
            .order
            .iter()
            .map(|&id| {
                if (1..=n).contains(&id) {
                    Ok(id - 1)
                } else {
                    Err(anyhow!("order id {id} out of range"))
                }
            })
            .collect::<Result<Vec<usize>>>()?;
        let field = |v: Option<f64>, id: usize, name: &str| v.ok_or_else(|| anyhow!("item {id}: missing `{name}`"));
        let mass_center = Point::new(self.mass_center.x, self.mass_center.y);

        Ok(match self.kind {
            Kind::Circles => {
                let items = by_id
                    .iter()
                    .map(|it| Ok(CircleItem::new(field(it.r, it.id, "r")?, it.m)?))
                    .collect::<Result<Vec<_>>>()?;
                let placements = order
                    .iter()
                    .map(|&i| Placed {
                        item: i,
                        placement: Point::new(by_id[i].x, by_id[i].y),
                    })
                    .collect();
                let layout = Layout {
                    placements,
                    mass_center,
                    envelope_radius: self.envelope_radius,
                    imbalance: self.imbalance,
                    fallbacks: self.fallbacks,
                };
                Decoded::Circles(items, layout)
            }
            Kind::Rects => {
                let items = by_id
                    .iter()
                    .map(|it| Ok(RectItem::new(field(it.a, it.id, "a")?, field(it.b, it.id, "b")?, it.m)?))
                    .collect::<Result<Vec<_>>>()?;
                let placements = order
                    .iter()
                    .map(|&i| {
                        let it = by_id[i];
                        let orientation = match it.orientation {
                            Some(0) => Orientation::Deg0,
                            Some(90) => Orientation::Deg90,
                            other => bail!("item {}: orientation must be 0 or 90, got {other:?}", it.id),
                        };
                        Ok(Placed {
                            item: i,
                            placement: RectPlacement::new(Point::new(it.x, it.y), orientation),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let layout = Layout {
                    placements,
                    mass_center,
                    envelope_radius: self.envelope_radius,
                    imbalance: self.imbalance,
                    fallbacks: self.fallbacks,
                };
                Decoded::Rects(items, layout)
            }
        })
    }

    /// Decodes and runs the non-overlap and envelope checks.
    pub fn verify(&self) -> Result<()> {
        match self.decode()? {
            Decoded::Circles(items, layout) => verify_circle_layout(&items, &layout)?,
            Decoded::Rects(items, layout) => verify_rect_layout(&items, &layout)?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wil_core::opt_circle::place_circles;
    use wil_core::opt_rect::place_rects;

    #[test]
    fn circle_round_trip() {
        let items = vec![
            CircleItem::new(1.0, 2.0).unwrap(),
            CircleItem::new(0.3, 1.0).unwrap(),
            CircleItem::new(2.0, 0.7).unwrap(),
        ];
        let layout = place_circles(&[2, 0, 1], &items).unwrap();
        let file = LayoutFile::from_circles(Some("t".into()), &items, &layout);
        assert_eq!(file.order, vec![3, 1, 2]);
        let back = LayoutFile::parse(&file.to_string_pretty()).unwrap();
        assert_eq!(back, file);
        back.verify().unwrap();
        let Decoded::Circles(its, lay) = back.decode().unwrap() else {
            panic!()
        };
        assert_eq!(its, items);
        assert_eq!(lay, layout);
    }

    #[test]
    fn rect_round_trip() {
        let items = vec![
            RectItem::new(1.0, 3.0, 2.0).unwrap(),
            RectItem::new(2.5, 0.5, 1.0).unwrap(),
        ];
        let layout = place_rects(&[1, 0], &items).unwrap();
        let file = LayoutFile::from_rects(None, &items, &layout);
        let back = LayoutFile::parse(&file.to_string_pretty()).unwrap();
        back.verify().unwrap();
        let Decoded::Rects(_, lay) = back.decode().unwrap() else {
            panic!()
        };
        assert_eq!(lay, layout);
    }

    #[test]
    fn tampered_layout_fails() {
        let items = vec![CircleItem::new(1.0, 1.0).unwrap(); 3];
        let layout = place_circles(&[0, 1, 2], &items).unwrap();
        let mut file = LayoutFile::from_circles(None, &items, &layout);
        file.items[1].x = file.items[0].x + 0.5;
        assert!(file.verify().is_err());
        file.items[1].id = 1;
        assert!(file.decode().is_err());
    }
}
