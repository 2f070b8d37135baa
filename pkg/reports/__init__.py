from .report_document import ReportDocument, Verdict

__all__ = ['ReportDocument', 'Verdict']
