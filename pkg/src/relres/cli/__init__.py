"""Command-line front end: sweep configs, figure presets, CSV and SVG output."""
