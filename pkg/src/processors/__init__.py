"""
푸리에 변환 및 경계 분석 모듈
"""
