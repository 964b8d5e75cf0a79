"""
q진 푸리에 분석 및 해밍 그래프 경계 검증 라이브러리
"""
