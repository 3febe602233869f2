//! Column tables produced by scenarios. Undefined values are NaN.

/// What to draw from a table.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    /// File stem suffix, unique within a scenario.
    pub name: String,
    pub title: String,
    pub x: String,
    pub ys: Vec<String>,
    /// Splits every y column into one series per distinct value.
    pub group_by: Option<String>,
}

impl PlotSpec {
    pub fn new(name: &str, title: &str, x: &str, ys: &[&str]) -> Self {
        Self {
            name: name.to_owned(),
            title: title.to_owned(),
            x: x.to_owned(),
            ys: ys.iter().map(|s| (*s).to_owned()).collect(),
            group_by: None,
        }
    }

    pub fn grouped(mut self, column: &str) -> Self {
        self.group_by = Some(column.to_owned());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Table-specific metadata appended to the scenario header.
    pub meta: Vec<(String, String)>,
    pub plots: Vec<PlotSpec>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_owned(),
            columns: columns.iter().map(|s| (*s).to_owned()).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
            plots: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }

    pub fn with_plot(mut self, plot: PlotSpec) -> Self {
        self.plots.push(plot);
        self
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_owned(), value.to_string()));
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn opt(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}
