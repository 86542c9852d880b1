//! Partition files: `{"labels": [...]}` JSON in dense-id order, and a
//! two-column `node,community` CSV keyed by external node id.

use std::collections::HashMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::NodeLabelTable;
use crate::partition::Partition;

/// `(external id, community)` for every node, in dense-id order. Community
/// numbers are canonical.
pub fn assignment<'a>(p: &Partition, labels: &'a NodeLabelTable) -> Result<Vec<(&'a str, u32)>> {
    if p.len() != labels.len() {
        return Err(Error::Contract(format!("partition has {} labels for {} nodes", p.len(), labels.len())));
    }
    Ok(labels.labels().iter().map(String::as_str).zip(p.canonical().into_labels()).collect())
}

pub fn write_partition_csv<W: Write>(p: &Partition, labels: &NodeLabelTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node", "community"])?;
    for (node, c) in assignment(p, labels)? {
        w.write_record([node, &c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a `node,community` CSV. Every node of `labels` must appear exactly
/// once; community names are arbitrary text. A `node,community` header is
/// optional.
pub fn read_partition_csv<R: Read>(source: R, labels: &NodeLabelTable) -> Result<Partition> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_reader(source);
    let mut slots: Vec<Option<u32>> = vec![None; labels.len()];
    let mut names: HashMap<String, u32> = HashMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected node,community, found {} fields", record.len()),
            });
        }
        if i == 0 && &record[0] == "node" && &record[1] == "community" {
            continue;
        }
        let id = labels
            .id(&record[0])
            .ok_or_else(|| Error::Contract(format!("node {:?} is not in the graph", &record[0])))?;
        if slots[id].is_some() {
            return Err(Error::Contract(format!("node {:?} listed twice", &record[0])));
        }
        let next = names.len() as u32;
        slots[id] = Some(*names.entry(record[1].to_owned()).or_insert(next));
    }
    let missing = slots.iter().filter(|s| s.is_none()).count();
    if missing > 0 {
        return Err(Error::Contract(format!("{missing} graph nodes have no community")));
    }
    Ok(Partition::new(slots.into_iter().map(Option::unwrap).collect()))
}

pub fn write_partition_json<W: Write>(p: &Partition, out: W) -> Result<()> {
    serde_json::to_writer(out, p)?;
    Ok(())
}

pub fn read_partition_json<R: Read>(source: R) -> Result<Partition> {
    Ok(serde_json::from_reader(source)?)
}
