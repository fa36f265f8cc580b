import * as fs from 'fs'
import * as path from 'path'

export interface FeatureRow {
  id: string
  label: 0 | 1
  values: Float32Array
}

/**
 * Serialize rows in the feature-file format consumed by the classifier:
 * UTF-8, LF endings, header `id,label,f0,...,f{D-1}`.  Number.toString
 * gives the shortest round-trip decimal, so full precision survives.
 */
export function formatFeatureFile(rows: FeatureRow[]): string {
  if (rows.length === 0) {
    throw new Error('refusing to write a feature file with no rows')
  }
  const dim = rows[0].values.length
  const header = ['id', 'label', ...Array.from({ length: dim }, (_, i) => `f${i}`)]
  const lines = [header.join(',')]
  for (const row of rows) {
    if (row.values.length !== dim) {
      throw new Error(`row ${row.id} has ${row.values.length} features, expected ${dim}`)
    }
    if (/[,\n\r]/.test(row.id)) {
      throw new Error(`id ${JSON.stringify(row.id)} cannot contain commas or newlines`)
    }
    lines.push(`${row.id},${row.label},${Array.from(row.values).join(',')}`)
  }
  return lines.join('\n') + '\n'
}

/** Write atomically: temp file in the target directory, then rename. */
export function writeFeatureFile(outPath: string, rows: FeatureRow[]): void {
  const text = formatFeatureFile(rows)
  const temp = path.join(
    path.dirname(path.resolve(outPath)),
    `.${path.basename(outPath)}.tmp-${process.pid}`,
  )
  fs.writeFileSync(temp, text, 'utf8')
  fs.renameSync(temp, outPath)
}

/** Parse a labels CSV of `id,label` lines (an `id,label` header is allowed). */
export function parseLabelsFile(labelsPath: string): Map<string, 0 | 1> {
  const labels = new Map<string, 0 | 1>()
  const lines = fs.readFileSync(labelsPath, 'utf8').split('\n')
  lines.forEach((line, index) => {
    if (line === '' || (index === 0 && line === 'id,label')) return
    const parts = line.split(',')
    if (parts.length !== 2 || (parts[1] !== '0' && parts[1] !== '1')) {
      throw new Error(`${labelsPath}: line ${index + 1}: expected "id,label" with label 0 or 1`)
    }
    labels.set(parts[0], parts[1] === '1' ? 1 : 0)
  })
  return labels
}
