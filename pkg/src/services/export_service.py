"""Export service for rendering and saving run reports."""

import io
import json
import os
import logging
import sys
from datetime import datetime
from typing import List, Dict, Any, Optional

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.config import config
from utils.validators import ValidationError

try:
    import pandas as pd
    PANDAS_AVAILABLE = True
except ImportError:
    PANDAS_AVAILABLE = False

try:
    from reportlab.lib.pagesizes import A4, landscape
    from reportlab.platypus import SimpleDocTemplate, Table, TableStyle, Paragraph, Spacer
    from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
    from reportlab.lib import colors
    REPORTLAB_AVAILABLE = True
except ImportError:
    REPORTLAB_AVAILABLE = False


def _flatten(row: Dict[str, Any], prefix: str = '') -> Dict[str, Any]:
    """Flatten nested result dictionaries into dotted column names."""
    flat = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = '; '.join(str(item) for item in value)
        else:
            flat[name] = value
    return flat


class ExportService:
    """Service for rendering reports to text and saving them as files."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    # In-memory rendering ---------------------------------------------------

    def render_json(self, report: Dict[str, Any]) -> str:
        """Serialize a report; values are already decimal strings."""
        return json.dumps(report, indent=2, ensure_ascii=False) + '\n'

    def table_frame(self, rows: List[Dict[str, Any]]):
        if not PANDAS_AVAILABLE:
            raise ValidationError("pandas is required for tabular output")
        return pd.DataFrame([_flatten(row) for row in rows])

    def render_csv(self, rows: List[Dict[str, Any]]) -> str:
        """Header row plus one record per row."""
        buffer = io.StringIO()
        self.table_frame(rows).to_csv(buffer, index=False, lineterminator='\n')
        return buffer.getvalue()

    # Saved reports ---------------------------------------------------------

    def export_report(self, report: Dict[str, Any], rows: List[Dict[str, Any]], format_type: str = 'csv',
                      filename: Optional[str] = None) -> str:
        """Save a report to ``REPORTS_DIR`` in the requested format."""
        if format_type not in config.EXPORT_FORMATS:
            raise ValidationError(f"Unsupported format: {format_type}. Supported formats: {config.EXPORT_FORMATS}")
        config.ensure_directories_exist()

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        if filename is None:
            filename = f"{report.get('command', 'report')}_{timestamp}"

        if format_type == 'json':
            return self._export_to_json(report, filename)
        elif format_type == 'csv':
            return self._export_to_csv(rows, filename)
        elif format_type == 'excel':
            return self._export_to_excel(report, rows, filename)
        elif format_type == 'pdf':
            return self._export_to_pdf(report, rows, filename)
        else:
            raise ValidationError(f"Format {format_type} not implemented")

    def _export_to_json(self, report: Dict[str, Any], filename: str) -> str:
        base_path = os.path.join(config.REPORTS_DIR, f"{filename}.json")
        try:
            with open(base_path, 'w', encoding='utf-8') as jsonfile:
                jsonfile.write(self.render_json(report))
            self.logger.info(f"Report exported to JSON: {base_path}")
            return base_path
        except Exception as e:
            self.logger.error(f"Error exporting to JSON: {str(e)}")
            raise

    def _export_to_csv(self, rows: List[Dict[str, Any]], filename: str) -> str:
        base_path = os.path.join(config.REPORTS_DIR, f"{filename}.csv")
        try:
            with open(base_path, 'w', newline='', encoding='utf-8') as csvfile:
                csvfile.write(self.render_csv(rows))
            self.logger.info(f"Report exported to CSV: {base_path}")
            return base_path
        except Exception as e:
            self.logger.error(f"Error exporting to CSV: {str(e)}")
            raise

    def _export_to_excel(self, report: Dict[str, Any], rows: List[Dict[str, Any]], filename: str) -> str:
        """Results sheet plus an inputs/provenance sheet."""
        if not PANDAS_AVAILABLE:
            self.logger.warning("Pandas not available. Falling back to JSON export.")
            return self._export_to_json(report, filename)

        base_path = os.path.join(config.REPORTS_DIR, f"{filename}.xlsx")
        try:
            with pd.ExcelWriter(base_path, engine='openpyxl') as writer:
                self.table_frame(rows).to_excel(writer, sheet_name='Results', index=False)
                meta = _flatten({'inputs': report.get('inputs', {}),
                                 'provenance': report.get('provenance', {})})
                meta_df = pd.DataFrame({'Field': list(meta.keys()),
                                        'Value': [str(v) for v in meta.values()]})
                meta_df.to_excel(writer, sheet_name='Run', index=False)
            self.logger.info(f"Report exported to Excel: {base_path}")
            return base_path
        except Exception as e:
            self.logger.error(f"Error exporting to Excel: {str(e)}")
            raise

    def _export_to_pdf(self, report: Dict[str, Any], rows: List[Dict[str, Any]], filename: str) -> str:
        if not REPORTLAB_AVAILABLE:
            self.logger.warning("ReportLab not available. Falling back to CSV export.")
            return self._export_to_csv(rows, filename)

        base_path = os.path.join(config.REPORTS_DIR, f"{filename}.pdf")
        try:
            doc = SimpleDocTemplate(base_path, pagesize=landscape(A4))
            styles = getSampleStyleSheet()
            title_style = ParagraphStyle('ReportTitle', parent=styles['Heading1'], fontSize=16,
                                         spaceAfter=20, alignment=1)
            story = [Paragraph(f"Anger-Weber report: {report.get('command', '')}", title_style)]

            inputs = _flatten(report.get('inputs', {}))
            if inputs:
                story.append(Paragraph("Inputs", styles['Heading2']))
                story.append(Paragraph(', '.join(f"{k} = {v}" for k, v in inputs.items()), styles['Normal']))
                story.append(Spacer(1, 12))

            if rows:
                frame = self.table_frame(rows)
                data = [list(frame.columns)] + [[str(v) for v in record] for record in frame.values.tolist()]
                table = Table(data, repeatRows=1)
                table.setStyle(TableStyle([
                    ('BACKGROUND', (0, 0), (-1, 0), colors.grey),
                    ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
                    ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
                    ('FONTSIZE', (0, 0), (-1, -1), 7),
                    ('BACKGROUND', (0, 1), (-1, -1), colors.beige),
                    ('GRID', (0, 0), (-1, -1), 0.5, colors.black)
                ]))
                story.append(Paragraph("Results", styles['Heading2']))
                story.append(table)

            doc.build(story)
            self.logger.info(f"Report exported to PDF: {base_path}")
            return base_path
        except Exception as e:
            self.logger.error(f"Error exporting to PDF: {str(e)}")
            raise
