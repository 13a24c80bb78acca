pub mod aggregation_oracle;
