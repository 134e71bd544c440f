import json

import numpy as np

from xalg.reports import Report, Section


def sample_report():
    report = Report('verify', ['t3-ideal-xmod'])
    s = report.section('verify t3-ideal-xmod', 'crossed-module axioms and structure')
    s.check('basis_axioms', True)
    s.checks_from('', {'equivariance_elements': True, 'peiffer_elements': None})
    s.add_object('boundary', np.array([[0, 0], [1, 0], [0, 1]]))
    return report


class TestSection:
    def test_skipped_checks_are_not_verdicts(self):
        s = sample_report().sections[0]
        assert [c.name for c in s.checks] == ['basis_axioms', 'equivariance_elements']
        assert s.objects['skipped'] == ['peiffer_elements']
        assert s.passed

    def test_error_fails_the_section(self):
        s = Section('broken')
        s.check('fine', True)
        s.error = {'error': 'PeifferFails', 'message': 'boom', 'witness': {'p': 0, 'q': 0}}
        assert not s.passed

    def test_check_returns_the_verdict(self):
        s = Section('x')
        assert s.check('a', 1) is True
        assert s.check('b', False, {'count': 2}) is False
        assert s.to_dict()['checks'][1] == {'name': 'b', 'passed': False, 'detail': {'count': 2}}


class TestReport:
    def test_json_is_plain(self):
        data = json.loads(sample_report().to_json())
        assert data['command'] == 'verify'
        assert data['passed'] is True
        assert data['sections'][0]['objects']['boundary'] == [[0, 0], [1, 0], [0, 1]]
        assert 'timing' not in data

    def test_json_is_stable(self):
        assert sample_report().to_json() == sample_report().to_json()

    def test_text_rendering(self):
        text = sample_report().render('text')
        assert text.startswith('xalg verify t3-ideal-xmod\n')
        assert '[PASS] verify t3-ideal-xmod' in text
        assert '1/1 sections passed' in text

    def test_failed_section_in_text(self):
        report = Report('catalog')
        report.section('bad').check('count_is_1', False, {'count': 0})
        report.section('good').check('ok', True)
        text = report.to_text()
        assert '[FAIL] bad' in text
        assert '1/2 sections passed' in text
        assert not report.passed

    def test_timing(self):
        report = sample_report()
        report.timing = {'total': 0.123456}
        assert json.loads(report.to_json())['timing'] == {'total': 0.1235}
        assert 'total=0.123s' in report.to_text()
